#include "dynclock/analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynclock {

std::string Eccentricity::to_string() const {
  switch (kind) {
    case Kind::finite:
      return std::to_string(value);
    case Kind::infinite:
      return "infinite";
    case Kind::exceeds_cap:
      return ">" + std::to_string(value);
  }
  return "";
}

namespace {

struct WindowAnalysis {
  std::uint64_t phases = 0;  // start rounds 1..phases cover all behaviors
  std::vector<Digraph> limit;
  // Least window length with a full row, per (phase, node); absent = never.
  std::vector<std::vector<std::optional<std::uint64_t>>> full_row_at;
  std::optional<std::uint64_t> rooted_delay;
  std::optional<std::uint64_t> uniform_delay;
  NodeMask uniform_roots = 0;
  std::optional<std::uint64_t> complete_delay;
};

/// Iterates all window products W_t(d) = G(t : t+d-1), t in [1, prefix+cycle],
/// until the whole family repeats over one cycle length, which pins it
/// forever (window products only gain edges, and the evolution past the
/// prefix is periodic).
WindowAnalysis analyze_windows(const DynamicGraph& dg) {
  if (!dg.is_prefix_cycle())
    throw std::invalid_argument("exact analysis needs a prefix-cycle schedule");
  const std::uint32_t n = dg.node_count();
  const std::uint64_t p = dg.prefix_length();
  const std::uint64_t L = dg.cycle_length();
  const std::uint64_t phases = p + L;
  const NodeMask all = full_mask(n);

  WindowAnalysis wa;
  wa.phases = phases;
  wa.full_row_at.assign(phases, std::vector<std::optional<std::uint64_t>>(n));

  std::vector<Digraph> windows;
  windows.reserve(phases);
  for (std::uint64_t t = 1; t <= phases; ++t) windows.push_back(dg.at(t));

  // Ring of the last L snapshots; windows(d) is compared against
  // windows(d-L) once d-L clears the prefix.
  std::vector<std::vector<Digraph>> ring(L);

  // The family can strictly grow at most phases*n*n times, and stalls of a
  // full cycle length terminate the loop, so this bound is unreachable.
  const std::uint64_t guard = p + L * (phases * n * n + 3) + L + 2;

  for (std::uint64_t d = 1;; ++d) {
    if (d > guard) throw std::logic_error("window iteration failed to stabilize");

    bool all_rooted = true;
    bool all_complete = true;
    bool uniform = true;
    NodeMask common_roots = 0;
    for (std::uint64_t ph = 0; ph < phases; ++ph) {
      const Digraph& w = windows[ph];
      Digraph closure = w.transitive_closure();
      NodeMask roots = 0;
      for (NodeId i = 0; i < n; ++i) {
        if (closure.out_mask(i) == all) roots |= NodeMask{1} << i;
        if (!wa.full_row_at[ph][i] && w.out_mask(i) == all) wa.full_row_at[ph][i] = d;
      }
      if (roots == 0) all_rooted = false;
      if (!w.is_complete()) all_complete = false;
      if (ph == 0)
        common_roots = roots;
      else if (roots != common_roots)
        uniform = false;
    }
    if (all_rooted && !wa.rooted_delay) wa.rooted_delay = d;
    if (uniform && common_roots != 0 && !wa.uniform_delay) {
      wa.uniform_delay = d;
      wa.uniform_roots = common_roots;
    }
    if (all_complete && !wa.complete_delay) wa.complete_delay = d;

    if (d >= std::max(p + L, L + 1)) {
      const std::vector<Digraph>& before = ring[d % L];
      if (!before.empty() && before == windows) {
        wa.limit = windows;
        return wa;
      }
    }
    ring[d % L] = windows;

    for (std::uint64_t ph = 0; ph < phases; ++ph)
      windows[ph] = product(windows[ph], dg.at(ph + 1 + d));
  }
}

Eccentricity ecc_from(const WindowAnalysis& wa, NodeId i) {
  std::uint64_t worst = 0;
  for (std::uint64_t ph = 0; ph < wa.phases; ++ph) {
    const auto& at = wa.full_row_at[ph][i];
    if (!at) return Eccentricity::infinite();
    worst = std::max(worst, *at);
  }
  return Eccentricity::finite(worst);
}

std::optional<std::uint64_t> capped(std::optional<std::uint64_t> v, std::uint64_t cap) {
  if (v && *v > cap) return std::nullopt;
  return v;
}

}  // namespace

ConnectivityClass classify(const DynamicGraph& dg, std::uint64_t delta_cap) {
  WindowAnalysis wa = analyze_windows(dg);
  const std::uint32_t n = dg.node_count();
  const NodeMask all = full_mask(n);

  ConnectivityClass c;
  c.n = n;
  c.rooted_with_delay = capped(wa.rooted_delay, delta_cap);
  c.uniformly_rooted_with_delay = capped(wa.uniform_delay, delta_cap);
  if (c.uniformly_rooted_with_delay) c.uniform_root_set = wa.uniform_roots;
  c.strongly_connected_with_delay = capped(wa.complete_delay, delta_cap);

  c.eccentricity.reserve(n);
  bool any_finite = false, all_finite = true;
  std::uint64_t lo = 0, hi = 0;
  for (NodeId i = 0; i < n; ++i) {
    Eccentricity e = ecc_from(wa, i);
    c.eccentricity.push_back(e);
    if (e.is_finite()) {
      c.center |= NodeMask{1} << i;
      lo = any_finite ? std::min(lo, e.value) : e.value;
      hi = std::max(hi, e.value);
      any_finite = true;
    } else {
      all_finite = false;
    }
  }
  c.radius = any_finite ? Eccentricity::finite(lo) : Eccentricity::infinite();
  c.diameter = all_finite ? Eccentricity::finite(hi) : Eccentricity::infinite();

  for (NodeId i = 0; i < n; ++i) {
    bool everywhere = true;
    for (std::uint64_t ph = 0; ph < wa.phases && everywhere; ++ph)
      everywhere = wa.limit[ph].out_mask(i) == all;
    if (everywhere) c.kernel |= NodeMask{1} << i;
  }
  return c;
}

Eccentricity eccentricity(const DynamicGraph& dg, NodeId i, std::uint64_t cap) {
  (void)cap;  // the fixpoint argument already decides finiteness exactly
  if (i >= dg.node_count()) throw std::out_of_range("node out of range");
  return ecc_from(analyze_windows(dg), i);
}

NodeMask kernel(const DynamicGraph& dg) {
  WindowAnalysis wa = analyze_windows(dg);
  const std::uint32_t n = dg.node_count();
  const NodeMask all = full_mask(n);
  NodeMask k = 0;
  for (NodeId i = 0; i < n; ++i) {
    bool everywhere = true;
    for (std::uint64_t ph = 0; ph < wa.phases && everywhere; ++ph)
      everywhere = wa.limit[ph].out_mask(i) == all;
    if (everywhere) k |= NodeMask{1} << i;
  }
  return k;
}

Eccentricity eccentricity_probe(const DynamicGraph& dg, NodeId i, std::uint64_t cap,
                                Round window_starts) {
  if (i >= dg.node_count()) throw std::out_of_range("node out of range");
  if (window_starts == 0) throw std::invalid_argument("need at least one window start");
  const NodeMask all = full_mask(dg.node_count());
  std::vector<Digraph> windows;
  windows.reserve(window_starts);
  for (Round t = 1; t <= window_starts; ++t) windows.push_back(dg.at(t));
  for (std::uint64_t d = 1; d <= cap; ++d) {
    bool ok = true;
    for (Round t = 0; t < window_starts; ++t) {
      if (d > 1) windows[t] = product(windows[t], dg.at(t + d));
      ok = ok && windows[t].out_mask(i) == all;
    }
    if (ok) return Eccentricity::finite(d);
  }
  return Eccentricity::exceeds_cap(cap);
}

KernelReachCheck kernel_reach_bound_check(const DynamicGraph& dg, std::uint64_t delta,
                                          Round horizon) {
  ConnectivityClass cls = classify(dg);
  if (!cls.rooted_with_delay || *cls.rooted_with_delay > delta)
    throw std::invalid_argument("schedule is not rooted with delay " + std::to_string(delta));

  KernelReachCheck r;
  r.kernel = cls.kernel;
  r.window = delta * (dg.node_count() - mask_size(cls.kernel));
  r.first_checked = dg.prefix_length() + 1;
  r.last_checked = horizon;
  r.pass = true;
  for (Round t = r.first_checked; t <= horizon; ++t) {
    Digraph w = dg.interval(t, t + r.window);
    for (NodeId i = 0; i < dg.node_count(); ++i) {
      if ((w.in_mask(i) & r.kernel) == 0) {
        r.pass = false;
        r.counterexample = {t, i};
        return r;
      }
    }
  }
  return r;
}

DynamicGraph induce(const DynamicGraph& dg, NodeMask nodes) {
  if (!dg.is_prefix_cycle()) throw std::invalid_argument("induce needs a prefix-cycle schedule");
  std::vector<NodeId> kept = mask_to_nodes(nodes);
  if (kept.empty()) throw std::invalid_argument("cannot induce on an empty node set");
  auto shrink = [&](const Digraph& g) {
    Digraph s(static_cast<std::uint32_t>(kept.size()));
    for (std::uint32_t a = 0; a < kept.size(); ++a)
      for (std::uint32_t b = 0; b < kept.size(); ++b)
        if (g.has_edge(kept[a], kept[b])) s.add_edge(a, b);
    return s;
  };
  std::vector<Digraph> prefix, cycle;
  for (const Digraph& g : dg.prefix()) prefix.push_back(shrink(g));
  for (const Digraph& g : dg.cycle()) cycle.push_back(shrink(g));
  return DynamicGraph::prefix_cycle(std::move(prefix), std::move(cycle));
}

}  // namespace dynclock
