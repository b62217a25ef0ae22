#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynclock/dynamic_graph.hpp"

namespace dynclock {

/// Least window length over which a node reaches everyone from every start
/// round. `exceeds_cap` only arises from capped probes of generator
/// schedules; prefix-cycle analyses are exact.
struct Eccentricity {
  enum class Kind { finite, infinite, exceeds_cap };
  Kind kind = Kind::infinite;
  std::uint64_t value = 0;  // the length when finite, the cap when exceeded

  static Eccentricity finite(std::uint64_t d) { return {Kind::finite, d}; }
  static Eccentricity infinite() { return {Kind::infinite, 0}; }
  static Eccentricity exceeds_cap(std::uint64_t cap) { return {Kind::exceeds_cap, cap}; }

  bool is_finite() const { return kind == Kind::finite; }
  bool operator==(const Eccentricity&) const = default;
  std::string to_string() const;
};

inline constexpr std::uint64_t kNoDelayCap = ~std::uint64_t{0};

struct ConnectivityClass {
  std::uint32_t n = 0;
  std::optional<std::uint64_t> rooted_with_delay;       // least witnessing delay
  std::optional<std::uint64_t> uniformly_rooted_with_delay;
  NodeMask uniform_root_set = 0;  // the stable root set; equals the center
  std::optional<std::uint64_t> strongly_connected_with_delay;  // = finite diameter
  NodeMask center = 0;
  NodeMask kernel = 0;
  Eccentricity radius;
  Eccentricity diameter;
  std::vector<Eccentricity> eccentricity;  // per node
};

/// Exact classification of a prefix-cycle schedule. Window products repeat
/// with the schedule's period, so the quantification over all rounds reduces
/// to finitely many phases; the window sequence is iterated to its product
/// fixpoint, making absence verdicts exact. Witnessing delays above
/// delta_cap are reported as absent. Rejects generator schedules.
ConnectivityClass classify(const DynamicGraph& dg, std::uint64_t delta_cap = kNoDelayCap);

/// Exact eccentricity on a prefix-cycle schedule. The cap is advisory here:
/// the fixpoint argument decides finiteness exactly, so the result is never
/// exceeds_cap. Rejects generator schedules.
Eccentricity eccentricity(const DynamicGraph& dg, NodeId i, std::uint64_t cap = kNoDelayCap);

/// Exact kernel of a prefix-cycle schedule: nodes that, from every round,
/// eventually reach every node. Rejects generator schedules.
NodeMask kernel(const DynamicGraph& dg);

/// Capped, advisory probe usable on generator schedules: checks window
/// lengths up to `cap` over start rounds 1..window_starts only.
Eccentricity eccentricity_probe(const DynamicGraph& dg, NodeId i, std::uint64_t cap,
                                Round window_starts);

struct KernelReachCheck {
  bool pass = false;
  std::uint64_t window = 0;  // delta * (n - |kernel|)
  NodeMask kernel = 0;
  Round first_checked = 0;
  Round last_checked = 0;
  // Witness (t, i) with no kernel in-neighbor over [t, t + window].
  std::optional<std::pair<Round, NodeId>> counterexample;
};

/// Checks that above the prefix every node hears from the kernel within the
/// stated window. Requires the schedule to be rooted with delay <= delta
/// (throws otherwise, as a precondition violation distinct from a failed
/// verdict).
KernelReachCheck kernel_reach_bound_check(const DynamicGraph& dg, std::uint64_t delta,
                                          Round horizon);

/// Restriction of a prefix-cycle schedule to a node subset, with nodes
/// renumbered in mask order.
DynamicGraph induce(const DynamicGraph& dg, NodeMask nodes);

}  // namespace dynclock
