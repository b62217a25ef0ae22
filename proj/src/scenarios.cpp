#include "dynclock/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "dynclock/presets.hpp"
#include "dynclock/random.hpp"

namespace dynclock {

namespace {

std::string at_round(Round t) { return "round " + std::to_string(t) + ": "; }

const SapTrace& as_sap(const ExecutionTrace& tr) {
  const SapTrace* t = std::get_if<SapTrace>(&tr);
  if (!t) throw std::invalid_argument("this scenario checks periodic-clock traces");
  return *t;
}

}  // namespace

Scenario chain_counterexample(std::uint64_t period, std::uint64_t factor, std::uint32_t n) {
  if (period < 2 || period % 2 != 0)
    throw std::invalid_argument("chain adversary needs an even period (P >= 2)");
  if (factor % 2 == 0) throw std::invalid_argument("chain adversary needs an odd factor");
  const std::uint64_t pm = period * factor;
  if (n <= pm / 2 + 1)
    throw std::invalid_argument("chain adversary needs n > P*M/2 + 1 = " +
                                std::to_string(pm / 2 + 1) + ", got n = " + std::to_string(n));

  Digraph g(n);
  for (NodeId i = 0; i + 1 < n; ++i) {
    g.add_edge(i, i + 1);
    g.add_edge(i + 1, i);
  }

  Scenario s;
  s.name = "chain";
  s.summary = "static bidirectional chain where the fixed-period clocks split into two values forever";
  s.graph = DynamicGraph::static_graph(g);
  s.algorithm = SapFixedAlgorithm{period, factor};
  std::vector<std::uint64_t> clocks(n, pm / 2);
  clocks[0] = 0;
  s.init = clocks;
  s.suggested_horizon = 10 * pm;
  s.expect_sync = false;
  s.advertised = classify(s.graph);
  if (s.advertised->diameter != Eccentricity::finite(n - 1))
    throw std::logic_error("chain diameter must be n-1");

  s.closed_form = [period, factor, n](const ExecutionTrace& tr) {
    std::vector<std::string> bad;
    const SapTrace& trace = as_sap(tr);
    const std::uint64_t pm = period * factor;
    const std::int64_t half = static_cast<std::int64_t>(pm / 2);
    for (Round t = 0; t <= trace.rounds(); ++t) {
      std::uint64_t lead = t % pm;
      std::uint64_t lag = (t + pm / 2) % pm;
      std::int64_t want =
          half + 1 - std::llabs(static_cast<std::int64_t>(lead) - half);
      std::int64_t got = 0;
      for (NodeId i = 0; i < n; ++i) {
        std::uint64_t c = trace.states[t][i].clock;
        if (c == lead)
          ++got;
        else if (c != lag)
          bad.push_back(at_round(t) + "node " + std::to_string(i) + " clock " +
                        std::to_string(c) + " matches neither " + std::to_string(lead) +
                        " nor " + std::to_string(lag));
      }
      if (got != want)
        bad.push_back(at_round(t) + std::to_string(got) + " nodes at the leading value, expected " +
                      std::to_string(want));
    }
    return bad;
  };
  return s;
}

Digraph h_digraph() {
  return Digraph::from_edges(3, {{0, 1}, {1, 2}, {2, 1}});
}

Scenario h_counterexample(std::uint64_t period, std::uint64_t factor) {
  if (period < 2) throw std::invalid_argument("period must be at least 2");
  if (factor < 1) throw std::invalid_argument("factor must be positive");

  Scenario s;
  s.name = "h";
  s.summary = "three-node static graph where one node free-runs a round ahead of the other two";
  s.graph = DynamicGraph::static_graph(h_digraph());
  s.algorithm = SapFixedAlgorithm{period, factor};
  s.init = std::vector<std::uint64_t>{1, 1, 0};
  s.suggested_horizon = 5 * period * factor;
  s.expect_sync = false;
  s.advertised = classify(s.graph);
  if (s.advertised->uniformly_rooted_with_delay != std::optional<std::uint64_t>{1} ||
      s.advertised->center != nodes_to_mask({0}))
    throw std::logic_error("trailing-node graph must be uniformly rooted at node 0");

  s.closed_form = [period, factor](const ExecutionTrace& tr) {
    std::vector<std::string> bad;
    const SapTrace& trace = as_sap(tr);
    const std::uint64_t pm = period * factor;
    for (Round t = 0; t <= trace.rounds(); ++t) {
      std::uint64_t mod = t % pm;
      std::uint64_t want0 = (t + 1) % pm;
      std::uint64_t want1 = mod == 0 ? 1 : mod;
      std::uint64_t want2 = mod;
      std::uint64_t got[3] = {trace.states[t][0].clock, trace.states[t][1].clock,
                              trace.states[t][2].clock};
      std::uint64_t want[3] = {want0, want1, want2};
      for (NodeId i = 0; i < 3; ++i)
        if (got[i] != want[i])
          bad.push_back(at_round(t) + "node " + std::to_string(i) + " clock " +
                        std::to_string(got[i]) + ", closed form expects " +
                        std::to_string(want[i]));
    }
    return bad;
  };
  return s;
}

bool rooted_cex_invariant(const SapState& leader, const SapState& aligned, const SapState& reset,
                          std::uint64_t period) {
  return leader.period_factor == aligned.period_factor &&
         leader.period_factor >= reset.period_factor && leader.clock == aligned.clock &&
         leader.clock % period != 0 &&
         leader.clock + 2 <= period * leader.period_factor && reset.clock == 0;
}

std::vector<RootedCexBlock> rooted_cex_blocks(std::uint64_t period, std::uint64_t factor0,
                                              std::uint64_t clock0, const GrowthFunction& growth,
                                              std::uint32_t num_blocks) {
  if (period < 2) throw std::invalid_argument("period must be at least 2");
  if (factor0 < 1) throw std::invalid_argument("initial factor must be positive");
  std::vector<RootedCexBlock> blocks;
  std::uint64_t m = factor0;
  std::uint64_t c = clock0;
  Round start = 0;
  bool reset_last = true;  // the invariant holds at round 0 with node 2 reset
  for (std::uint32_t r = 0; r < num_blocks; ++r) {
    std::string tag = "block " + std::to_string(r) + ": ";
    if (c < 1 || c + 2 > period * m)
      throw std::invalid_argument(tag + "need 1 <= c <= P*M - 2, got c = " + std::to_string(c) +
                                  " with P*M = " + std::to_string(period * m));
    if (c % period == 0)
      throw std::invalid_argument(tag + "need c not congruent to 0 modulo the period");
    Round len = period * m - c;
    blocks.push_back({start, len, m, c, reset_last});
    m = growth.iterate(m, len - 1);
    c = len;
    start += len;
    reset_last = !reset_last;
  }
  return blocks;
}

Scenario rooted_counterexample(std::uint64_t period, std::uint64_t factor0, std::uint64_t clock0,
                               GrowthFunction growth, std::uint32_t num_blocks) {
  if (num_blocks < 1) throw std::invalid_argument("need at least one block");
  auto blocks = rooted_cex_blocks(period, factor0, clock0, growth, num_blocks);

  // Lazily extended block table so the generator is total.
  struct Table {
    std::mutex mu;
    std::vector<RootedCexBlock> blocks;
    std::uint64_t period;
    GrowthFunction growth;
    Table(std::vector<RootedCexBlock> b, std::uint64_t p, GrowthFunction g)
        : blocks(std::move(b)), period(p), growth(std::move(g)) {}
    RootedCexBlock block_for(Round t) {
      std::scoped_lock lock(mu);
      while (blocks.back().start + blocks.back().length < t) {
        const RootedCexBlock& b = blocks.back();
        std::uint64_t m = growth.iterate(b.factor, b.length - 1);
        std::uint64_t c = b.length;
        blocks.push_back({b.start + b.length, period * m - c, m, c, !b.reset_is_last});
      }
      for (const RootedCexBlock& b : blocks)
        if (t <= b.start + b.length) return b;
      throw std::logic_error("unreachable");
    }
  };
  auto table = std::make_shared<Table>(blocks, period, growth);

  auto broadcast = [] {  // node 0 talks to both others
    return Digraph::from_edges(3, {{0, 1}, {0, 2}});
  };
  auto generator = [table, broadcast](Round t) {
    RootedCexBlock b = table->block_for(t);
    Round rel = t - b.start;
    if (rel == b.length) return Digraph(3);  // silent round, loops only
    if (rel == b.length - 1) {
      Digraph g = broadcast();
      g.add_edge(b.reset_is_last ? 2 : 1, 0);  // one-shot back edge
      return g;
    }
    return broadcast();
  };

  Scenario s;
  s.name = "rooted-cex";
  s.summary = "sporadic back-edges keep resetting one node; rooted with delay 2 yet never synchronized";
  s.graph = DynamicGraph::generator(3, generator);
  s.algorithm = SapAlgorithm{SapConfig{period, growth}};
  s.init = std::vector<SapState>{{clock0, factor0}, {clock0, factor0}, {0, factor0}};
  s.suggested_horizon = blocks.back().start + blocks.back().length;
  s.expect_sync = false;

  // Serializable stand-in: the constructed blocks as a prefix, then minimal
  // blocks cycling both back edges. Keeps "rooted with delay 2" (the silent
  // round defeats delay 1) without pretending the recurrence continues.
  {
    std::vector<Digraph> prefix;
    for (Round t = 1; t <= s.suggested_horizon; ++t) prefix.push_back(generator(t));
    Digraph back_k = broadcast(), back_j = broadcast();
    back_k.add_edge(2, 0);
    back_j.add_edge(1, 0);
    std::vector<Digraph> cycle{broadcast(), back_k, Digraph(3),
                               broadcast(), back_j, Digraph(3)};
    s.exportable_graph = DynamicGraph::prefix_cycle(std::move(prefix), std::move(cycle));
  }

  s.closed_form = [period, blocks](const ExecutionTrace& tr) {
    std::vector<std::string> bad;
    const SapTrace& trace = as_sap(tr);
    for (const RootedCexBlock& b : blocks) {
      if (b.start > trace.rounds()) break;
      const auto& states = trace.states[b.start];
      NodeId reset = b.reset_is_last ? 2 : 1;
      NodeId aligned = b.reset_is_last ? 1 : 2;
      if (!rooted_cex_invariant(states[0], states[aligned], states[reset], period))
        bad.push_back(at_round(b.start) + "block invariant does not hold (reset node " +
                      std::to_string(reset) + ")");
      if (states[0].period_factor != b.factor)
        bad.push_back(at_round(b.start) + "leader factor " +
                      std::to_string(states[0].period_factor) + ", recurrence expects " +
                      std::to_string(b.factor));
      if (states[0].clock != b.clock)
        bad.push_back(at_round(b.start) + "leader clock " + std::to_string(states[0].clock) +
                      ", recurrence expects " + std::to_string(b.clock));
    }
    return bad;
  };
  return s;
}

namespace {

Digraph out_star(std::uint32_t n, NodeId hub) {
  Digraph g(n);
  for (NodeId v = 0; v < n; ++v) g.add_edge(hub, v);
  return g;
}

}  // namespace

Scenario star_alternation_2cycle(std::uint32_t n) {
  if (n < 3) throw std::invalid_argument("star alternation needs n >= 3");
  Scenario s;
  s.name = "stars-2cycle";
  s.summary = "strict alternation of two out-stars: rooted with delay 1, leaves never central";
  s.graph = DynamicGraph::prefix_cycle({}, {out_star(n, 0), out_star(n, 1)});
  s.algorithm = MinMaxAlgorithm{};
  s.init = random_minmax_states(n, 1);
  s.suggested_horizon = 60;
  s.expect_sync = true;
  s.advertised = classify(s.graph);
  if (s.advertised->rooted_with_delay != std::optional<std::uint64_t>{1})
    throw std::logic_error("star alternation must be rooted with delay 1");
  return s;
}

NodeId star_hub_at(Round t) {
  // Runs of lengths 1,1,2,2,3,3,...; pair m covers rounds up to m(m+1).
  std::uint64_t m = static_cast<std::uint64_t>((std::sqrt(4.0 * static_cast<double>(t) + 1.0) - 1.0) / 2.0);
  while (m * (m + 1) < t) ++m;
  while (m >= 1 && (m - 1) * m >= t) --m;
  Round offset = t - (m - 1) * m;
  return offset <= m ? 0 : 1;
}

Scenario star_alternation_growing(std::uint32_t n) {
  if (n < 3) throw std::invalid_argument("star alternation needs n >= 3");
  Scenario s;
  s.name = "stars-growing";
  s.summary = "out-star runs of growing length: rooted with delay 1 but with an infinite radius";
  s.graph = DynamicGraph::generator(n, [n](Round t) { return out_star(n, star_hub_at(t)); });
  s.algorithm = MinMaxAlgorithm{};
  s.init = random_minmax_states(n, 1);
  s.suggested_horizon = 300;
  s.expect_sync = true;
  return s;
}

Scenario link_loss_adversary(std::uint32_t n, std::uint32_t losses, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("link-loss adversary needs n >= 2");
  if (losses > 2 * n - 3)
    throw std::invalid_argument("at most 2n-3 = " + std::to_string(2 * n - 3) +
                                " losses per round keep the digraph rooted, got " +
                                std::to_string(losses));
  auto generator = [n, losses, seed](Round t) {
    std::mt19937_64 rng(mix_seed(seed, t));
    Digraph g = Digraph::complete(n);
    const std::uint64_t non_loops = static_cast<std::uint64_t>(n) * (n - 1);
    std::vector<std::uint64_t> picked;
    while (picked.size() < losses) {
      std::uint64_t e = uniform_u64(rng, 0, non_loops - 1);
      if (std::find(picked.begin(), picked.end(), e) != picked.end()) continue;
      picked.push_back(e);
      NodeId from = static_cast<NodeId>(e / (n - 1));
      NodeId rest = static_cast<NodeId>(e % (n - 1));
      NodeId to = rest >= from ? rest + 1 : rest;
      g.remove_edge(from, to);
    }
    // A digraph on n nodes with at least n^2-3n+3 edges is rooted; removing
    // at most 2n-3 of the n^2-n non-loop edges stays above that line.
    if (!g.is_rooted())
      throw std::logic_error("link-loss adversary produced an unrooted digraph at round " +
                             std::to_string(t));
    return g;
  };

  Scenario s;
  s.name = "link-loss";
  s.summary = "complete digraph with seeded per-round message losses, always rooted";
  s.graph = DynamicGraph::generator(n, generator);
  s.algorithm = MinMaxAlgorithm{};
  s.init = random_minmax_states(n, seed);
  s.suggested_horizon = 500;
  s.expect_sync = true;
  return s;
}

Scenario round_robin_transform(const Digraph& base) {
  const std::uint32_t n = base.node_count();
  if (!base.is_bidirectional())
    throw std::invalid_argument("round-robin input must be bidirectional");
  if (!base.is_strongly_connected())
    throw std::invalid_argument("round-robin input must be connected");

  std::vector<std::vector<NodeId>> nbrs(n);
  std::uint64_t cycle_len = 1;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : mask_to_nodes(base.out_mask(u)))
      if (v != u) nbrs[u].push_back(v);
    if (!nbrs[u].empty()) cycle_len = std::lcm(cycle_len, nbrs[u].size());
  }

  std::vector<Digraph> cycle;
  for (std::uint64_t r = 0; r < cycle_len; ++r) {
    Digraph g(n);
    for (NodeId u = 0; u < n; ++u)
      if (!nbrs[u].empty()) g.add_edge(u, nbrs[u][r % nbrs[u].size()]);
    cycle.push_back(std::move(g));
  }

  Scenario s;
  s.name = "round-robin";
  s.summary = "one message per node per round, cycling neighbors in a fixed order";
  s.graph = DynamicGraph::prefix_cycle({}, std::move(cycle));
  s.algorithm = SapFixedAlgorithm{6 * n, 1};
  s.init = std::vector<std::uint64_t>(n, 0);
  s.suggested_horizon = 9 * n;
  s.expect_sync = true;
  s.advertised = classify(s.graph);
  if (!s.advertised->diameter.is_finite())
    throw std::logic_error("round-robin over a connected base must have a finite diameter");
  return s;
}

namespace {

Digraph random_digraph(std::mt19937_64& rng, std::uint32_t n, double density) {
  Digraph g(n);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j)
      if (i != j && chance(rng, density)) g.add_edge(i, j);
  return g;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

RandomSchedule random_rooted(std::uint32_t n, std::uint64_t delta, ScheduleClass cls,
                             std::uint64_t seed, const RandomScheduleOptions& opts) {
  if (n < 2) throw std::invalid_argument("need at least two nodes");
  if (delta < 1) throw std::invalid_argument("delay bound must be positive");

  for (std::uint64_t attempt = 0; attempt < opts.budget; ++attempt) {
    std::mt19937_64 rng(mix_seed(seed, attempt));
    std::uint64_t min_cycle = cls == ScheduleClass::rooted ? 2 : 1;  // apexes must vary
    std::uint64_t cyc = uniform_u64(rng, min_cycle, std::max(min_cycle, opts.max_cycle));
    std::uint64_t pre = uniform_u64(rng, 0, opts.max_prefix);

    std::vector<Digraph> rounds;
    switch (cls) {
      case ScheduleClass::strongly_connected: {
        double q = 0.5 + 0.45 * unit(rng);
        for (std::uint64_t r = 0; r < pre + cyc; ++r) rounds.push_back(random_digraph(rng, n, q));
        break;
      }
      case ScheduleClass::uniformly_rooted: {
        std::uint32_t z = static_cast<std::uint32_t>(uniform_u64(rng, 1, n - 1));
        double qz = 0.6 + 0.4 * unit(rng);
        double qo = 0.35 + 0.55 * unit(rng);
        double qq = 0.25 + 0.6 * unit(rng);
        for (std::uint64_t r = 0; r < pre + cyc; ++r) {
          Digraph g(n);
          for (NodeId i = 0; i < n; ++i)
            for (NodeId j = 0; j < n; ++j) {
              if (i == j) continue;
              if (j < z && i >= z) continue;  // the root pool hears nobody outside it
              double q = i < z ? (j < z ? qz : qo) : qq;
              if (chance(rng, q)) g.add_edge(i, j);
            }
          rounds.push_back(std::move(g));
        }
        break;
      }
      case ScheduleClass::rooted: {
        double qe = 0.35 * unit(rng);
        std::vector<NodeId> apex;
        for (std::uint64_t r = 0; r < pre + cyc; ++r)
          apex.push_back(static_cast<NodeId>(uniform_u64(rng, 0, n - 1)));
        if (cyc >= 2 && apex[pre] == apex[pre + 1]) apex[pre + 1] = (apex[pre] + 1) % n;
        for (std::uint64_t r = 0; r < pre + cyc; ++r) {
          Digraph g = out_star(n, apex[r]);
          for (NodeId i = 0; i < n; ++i)
            for (NodeId j = 0; j < n; ++j)
              if (i != j && chance(rng, qe)) g.add_edge(i, j);
          rounds.push_back(std::move(g));
        }
        break;
      }
    }

    std::vector<Digraph> prefix(rounds.begin(), rounds.begin() + pre);
    std::vector<Digraph> cycle(rounds.begin() + pre, rounds.end());
    DynamicGraph dg = DynamicGraph::prefix_cycle(std::move(prefix), std::move(cycle));
    ConnectivityClass c = classify(dg);

    bool ok = false;
    switch (cls) {
      case ScheduleClass::strongly_connected:
        ok = c.strongly_connected_with_delay && *c.strongly_connected_with_delay <= delta;
        break;
      case ScheduleClass::uniformly_rooted:
        ok = c.uniformly_rooted_with_delay && *c.uniformly_rooted_with_delay <= delta;
        if (ok && opts.exclude_stronger) ok = c.center != full_mask(n);
        break;
      case ScheduleClass::rooted:
        ok = c.rooted_with_delay && *c.rooted_with_delay <= delta;
        if (ok && opts.exclude_stronger)
          ok = !c.uniformly_rooted_with_delay || *c.uniformly_rooted_with_delay > delta;
        break;
    }
    if (ok) return {std::move(dg), std::move(c)};
  }
  throw std::runtime_error("schedule sampling budget exhausted without hitting the requested class");
}

std::vector<std::pair<std::string, std::string>> scenario_catalog() {
  return {
      {"chain", "fixed-period clocks on a static bidirectional chain; never synchronizes"},
      {"h", "three-node static graph; fixed-period clocks trail one node forever"},
      {"rooted-cex", "rooted-with-delay-2 adversary defeating the adaptive algorithm"},
      {"stars-2cycle", "strict two-cycle of out-stars (analyzable)"},
      {"stars-growing", "out-star runs of growing length (generator only)"},
      {"link-loss", "complete digraph with seeded per-round message losses"},
      {"round-robin", "one message per round over a bidirectional base graph"},
      {"random-rooted", "rejection-sampled schedule of a requested connectivity class"},
  };
}

}  // namespace dynclock
