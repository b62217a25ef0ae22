#include "dynclock/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynclock {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool all_equal(const std::vector<std::uint64_t>& xs) {
  for (std::uint64_t x : xs)
    if (x != xs.front()) return false;
  return true;
}

bool all_congruent(const std::vector<SapState>& states, std::uint64_t period) {
  for (const SapState& s : states)
    if (s.clock % period != states.front().clock % period) return false;
  return true;
}

}  // namespace

std::string SyncVerdict::to_string() const {
  if (!synchronized) return "not_within_horizon";
  return "synchronized_at:" + std::to_string(round);
}

SapTrace run_sap(const Execution& ex) {
  const std::uint32_t n = ex.graph.node_count();
  SapTrace trace;
  trace.graph = ex.graph;
  trace.horizon = ex.horizon;
  trace.seed = ex.seed;

  std::vector<SapState> init;
  if (const auto* sap = std::get_if<SapAlgorithm>(&ex.algorithm)) {
    trace.config = sap->config;
    init = std::get<std::vector<SapState>>(ex.initial_states);
  } else if (const auto* fixed = std::get_if<SapFixedAlgorithm>(&ex.algorithm)) {
    require(fixed->period_factor >= 1, "fixed period factor must be positive");
    trace.config = SapConfig{fixed->period, GrowthFunction::constant(fixed->period_factor)};
    trace.fixed_period = true;
    trace.fixed_factor = fixed->period_factor;
    for (std::uint64_t c : std::get<std::vector<std::uint64_t>>(ex.initial_states))
      init.push_back(SapState{c, fixed->period_factor});
  } else {
    throw std::invalid_argument("execution does not describe a periodic-clock run");
  }

  require(ex.horizon >= 1, "horizon must be at least 1");
  require(init.size() == n, "one initial state per node");
  require(trace.config.period >= 1, "period must be positive");
  if (trace.config.growth(0) == 0)
    for (const SapState& s : init)
      require(s.period_factor >= 1,
              "growth stuck at zero: initial period factors must be positive");

  // First-round pre-reduction: clocks start below period * factor.
  for (SapState& s : init) s.clock = reduce_mod(s.clock, trace.config.period * s.period_factor);
  trace.states.push_back(init);

  const Round confirm = ex.confirmation_window ? ex.confirmation_window : 2 * trace.config.period;
  Round agree_run = all_congruent(init, trace.config.period) ? 1 : 0;

  for (Round t = 1; t <= ex.horizon; ++t) {
    Digraph g = ex.graph.at(t);
    require(g.node_count() == n, "schedule changed node count");
    const std::vector<SapState>& prev = trace.states.back();
    std::vector<SapState> next(n);
    std::vector<std::uint8_t> fired(n, 0);
    std::vector<NodeId> source(n, 0);
    for (NodeId i = 0; i < n; ++i) {
      std::vector<SapMessage> inbox;
      NodeId best = i;
      std::uint64_t best_clock = prev[i].clock;
      for (NodeId j : mask_to_nodes(g.in_mask(i))) {
        inbox.push_back(sap_send(prev[j]));
        if (prev[j].clock < best_clock) {
          best_clock = prev[j].clock;
          best = j;
        }
      }
      SapStepResult r = sap_step(prev[i], inbox, trace.config);
      next[i] = r.state;
      fired[i] = r.growth_fired ? 1 : 0;
      source[i] = best;
    }
    trace.delivered.push_back(std::move(g));
    trace.states.push_back(std::move(next));
    trace.growth_fired.push_back(std::move(fired));
    trace.min_source.push_back(std::move(source));

    if (ex.early_stop) {
      agree_run = all_congruent(trace.states.back(), trace.config.period) ? agree_run + 1 : 0;
      if (agree_run > confirm) break;
    }
  }
  return trace;
}

MinMaxTrace run_minmax(const Execution& ex) {
  const std::uint32_t n = ex.graph.node_count();
  require(std::holds_alternative<MinMaxAlgorithm>(ex.algorithm),
          "execution does not describe a minmax run");
  require(ex.horizon >= 1, "horizon must be at least 1");
  const auto& init = std::get<std::vector<MinMaxState>>(ex.initial_states);
  require(init.size() == n, "one initial state per node");

  MinMaxTrace trace;
  trace.graph = ex.graph;
  trace.horizon = ex.horizon;
  trace.seed = ex.seed;
  trace.views_retained = ex.retain_views;

  std::vector<MinMaxState> current = init;
  auto record = [&](const std::vector<MinMaxState>& states) {
    std::vector<std::uint64_t> age(n), mc(n), clock(n), vs(n);
    for (NodeId i = 0; i < n; ++i) {
      age[i] = states[i].age;
      mc[i] = states[i].view.empty() ? 0 : states[i].view.min_value();
      clock[i] = states[i].clock;
      vs[i] = states[i].view.size();
    }
    trace.age.push_back(std::move(age));
    trace.min_clock.push_back(std::move(mc));
    trace.clock.push_back(std::move(clock));
    trace.view_size.push_back(std::move(vs));
    if (ex.retain_views) {
      std::vector<View> vs2;
      vs2.reserve(n);
      for (NodeId i = 0; i < n; ++i) vs2.push_back(states[i].view);
      trace.views.push_back(std::move(vs2));
    }
  };
  record(current);

  const Round confirm = ex.confirmation_window ? ex.confirmation_window : 3;
  Round lockstep_run = 0;

  for (Round t = 1; t <= ex.horizon; ++t) {
    Digraph g = ex.graph.at(t);
    require(g.node_count() == n, "schedule changed node count");
    std::vector<MinMaxState> next(n);
    std::vector<std::uint8_t> degen(n, 0);
    for (NodeId i = 0; i < n; ++i) {
      std::vector<const View*> inbox;
      for (NodeId j : mask_to_nodes(g.in_mask(i))) inbox.push_back(&minmax_send(current[j]));
      MinMaxStepResult r = minmax_step(current[i], inbox);
      next[i] = std::move(r.state);
      degen[i] = r.degenerate_repair ? 1 : 0;
    }
    current = std::move(next);
    trace.delivered.push_back(std::move(g));
    trace.degenerate.push_back(std::move(degen));
    record(current);

    if (ex.early_stop) {
      const auto& now = trace.clock.back();
      const auto& before = trace.clock[trace.clock.size() - 2];
      bool lockstep = all_equal(now) && all_equal(before) && now[0] == before[0] + 1;
      lockstep_run = lockstep ? lockstep_run + 1 : 0;
      if (lockstep_run > confirm) break;
    }
  }
  return trace;
}

ExecutionTrace run(const Execution& ex) {
  if (std::holds_alternative<MinMaxAlgorithm>(ex.algorithm)) return run_minmax(ex);
  return run_sap(ex);
}

SyncVerdict detect_sync(const SapTrace& trace) {
  SyncVerdict v;
  v.mode = SyncVerdict::Mode::mod_p;
  v.period = trace.config.period;
  const Round T = trace.rounds();
  Round earliest = T + 1;
  for (Round t = T; t >= 1; --t) {
    if (!all_congruent(trace.states[t], trace.config.period)) break;
    earliest = t;
  }
  if (earliest <= T) {
    v.synchronized = true;
    v.round = earliest;
  }
  return v;
}

SyncVerdict detect_sync(const MinMaxTrace& trace) {
  SyncVerdict v;
  v.mode = SyncVerdict::Mode::exact_incrementing;
  const Round T = trace.rounds();
  Round earliest = T + 1;
  for (Round t = T; t >= 1; --t) {
    if (!all_equal(trace.clock[t])) break;
    if (t < T && trace.clock[t + 1][0] != trace.clock[t][0] + 1) break;
    earliest = t;
  }
  if (earliest <= T) {
    v.synchronized = true;
    v.round = earliest;
  }
  return v;
}

SyncVerdict detect_sync(const ExecutionTrace& trace) {
  return std::visit([](const auto& t) { return detect_sync(t); }, trace);
}

SettleMeasurement measure_settling(const MinMaxTrace& trace, NodeMask kernel,
                                   std::uint64_t delta, std::optional<Round> s0) {
  const std::uint32_t n = trace.node_count();
  const Round T = trace.rounds();
  if (kernel == 0) throw std::invalid_argument("kernel must be non-empty");
  if (!s0) {
    if (!trace.graph.is_prefix_cycle())
      throw std::invalid_argument("s0 must be supplied for generator schedules");
    s0 = trace.graph.prefix_length() + 1;
  }

  SettleMeasurement m;
  m.s0 = *s0;
  m.settle_round.assign(n, 0);
  bool all_settled = true;
  for (NodeId i = 0; i < n; ++i) {
    auto drift = [&](Round t) {
      return static_cast<std::int64_t>(trace.min_clock[t][i]) - static_cast<std::int64_t>(t);
    };
    Round r = T;
    while (r > 0 && drift(r - 1) == drift(T)) --r;
    m.settle_round[i] = r;
    if (r + 1 > T) all_settled = false;  // want at least two constant samples
    m.r0 = std::max(m.r0, r);
  }
  m.t0 = m.r0 + 1 + (n - mask_size(kernel)) * delta;
  if (!all_settled) {
    m.note = "horizon too short: a min-clock drift is still moving at the end of the trace";
    return m;
  }
  if (m.t0 > T) {
    m.note = "horizon too short: settled, but the trace ends before round " + std::to_string(m.t0);
    return m;
  }
  NodeId witness = mask_to_nodes(kernel).front();
  m.kernel_constant =
      static_cast<std::int64_t>(trace.min_clock[T][witness]) - static_cast<std::int64_t>(T);
  m.settled = true;
  return m;
}

CenterMetrics center_metrics(const SapTrace& trace, NodeMask center, std::uint64_t period) {
  if (center == 0) throw std::invalid_argument("center must be non-empty");
  const Round T = trace.rounds();
  std::vector<NodeId> z = mask_to_nodes(center);

  CenterMetrics cm;
  const std::uint64_t factor_at_end = trace.states[T][z.front()].period_factor;
  auto lockstep = [&](Round t) {
    for (NodeId k : z) {
      if (trace.states[t][k].clock != trace.states[t][z.front()].clock) return false;
      if (trace.states[t][k].period_factor != factor_at_end) return false;
    }
    return true;
  };
  // Stabilization is an executed-round property: the scan stops at round 1.
  Round earliest = T + 1;
  for (Round t = T; t >= 1; --t) {
    if (!lockstep(t)) break;
    earliest = t;
  }
  if (earliest > T) {
    cm.note = "the center never reaches lockstep within the horizon";
    return cm;
  }
  cm.stabilized = true;
  cm.stabilization_round = earliest;
  cm.center_factor = factor_at_end;
  for (Round t = earliest; t <= T; ++t) {
    std::uint64_t common = trace.states[t][z.front()].clock;
    cm.common_clock.push_back(common);
    NodeMask sz = 0;
    for (NodeId i = 0; i < trace.node_count(); ++i)
      if (trace.states[t][i].clock % period == common % period) sz |= NodeMask{1} << i;
    cm.z_synchronized.push_back(sz);
    if (sz == full_mask(trace.node_count())) {
      cm.min_unsynced_factor.push_back(std::nullopt);
    } else {
      std::uint64_t best = ~std::uint64_t{0};
      for (NodeId i = 0; i < trace.node_count(); ++i)
        if (!mask_contains(sz, i)) best = std::min(best, trace.states[t][i].period_factor);
      cm.min_unsynced_factor.push_back(best);
    }
  }
  return cm;
}

}  // namespace dynclock
