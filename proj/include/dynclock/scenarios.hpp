#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dynclock/analysis.hpp"
#include "dynclock/engine.hpp"

namespace dynclock {

/// A packaged experiment: a schedule, the algorithm it targets, a suggested
/// initial state, and (where one exists) a closed-form per-round checker
/// that the run must satisfy.
struct Scenario {
  std::string name;
  std::string summary;
  DynamicGraph graph;
  Algorithm algorithm;
  InitialStates init;
  Round suggested_horizon = 0;
  std::optional<bool> expect_sync;  // within the suggested horizon
  // Returns one message per violated closed-form check; empty means pass.
  std::function<std::vector<std::string>(const ExecutionTrace&)> closed_form;
  // classify() output, computed at construction for prefix-cycle schedules.
  std::optional<ConnectivityClass> advertised;
  // Generator scenarios may provide a serializable stand-in: the generated
  // rounds as a prefix plus a class-preserving cycle. Good for `analyze`,
  // not for the closed-form run itself.
  std::optional<DynamicGraph> exportable_graph;
};

/// Static bidirectional chain under the fixed-period algorithm, started with
/// node 0 at clock 0 and everyone else at P*M/2. Requires P even, M odd and
/// n > P*M/2 + 1; the run then never synchronizes, and each round splits the
/// nodes between exactly two clock values in a closed form the checker
/// enforces.
Scenario chain_counterexample(std::uint64_t period, std::uint64_t factor, std::uint32_t n);

/// Static three-node graph (0 -> 1, 1 <-> 2, loops) under the fixed-period
/// algorithm with clocks (1, 1, 0): node 0 free-runs one round ahead and the
/// others trail it forever without ever agreeing modulo the period.
Scenario h_counterexample(std::uint64_t period, std::uint64_t factor);

/// The digraph of h_counterexample, exposed for runs of the adaptive
/// algorithm on the same topology.
Digraph h_digraph();

/// Rooted-but-not-uniformly-rooted adversary on three nodes: blocks of
/// broadcasts from node 0 punctuated by one back-edge round and one silent
/// round, timed against the adaptive algorithm's own state so two nodes stay
/// aligned while the third is held at zero. Realized as a generator schedule
/// whose block lengths follow the induced recurrence; the closed-form
/// checker validates the alternating invariant at each block boundary.
Scenario rooted_counterexample(std::uint64_t period, std::uint64_t factor0, std::uint64_t clock0,
                               GrowthFunction growth, std::uint32_t num_blocks);

/// The state invariant the rooted counterexample maintains at block
/// boundaries, with roles (leader, aligned, reset): leader and aligned share
/// clock and factor, the leader's factor dominates the reset node's, the
/// shared clock is neither congruent to zero nor within one of the wrap, and
/// the reset node sits at zero.
bool rooted_cex_invariant(const SapState& leader, const SapState& aligned, const SapState& reset,
                          std::uint64_t period);

/// Exact blocks the rooted counterexample is built from (exposed so tests
/// can cross-check the recurrence).
struct RootedCexBlock {
  Round start = 0;           // invariant holds at this round (0 = initial state)
  Round length = 0;          // P*M - c rounds
  std::uint64_t factor = 0;  // M at the block start
  std::uint64_t clock = 0;   // c at the block start
  bool reset_is_last = true;  // true: node 2 held at zero (back-edge from node 2)
};
std::vector<RootedCexBlock> rooted_cex_blocks(std::uint64_t period, std::uint64_t factor0,
                                              std::uint64_t clock0, const GrowthFunction& growth,
                                              std::uint32_t num_blocks);

/// Alternating out-stars centered at nodes 0 and 1. The strict two-cycle is
/// eventually periodic and analyzable; the growing-runs variant doubles run
/// lengths (1,1,2,2,3,3,...) and is generator-only.
Scenario star_alternation_2cycle(std::uint32_t n);
Scenario star_alternation_growing(std::uint32_t n);

/// Hub of the growing-runs pattern at round t (0 or 1).
NodeId star_hub_at(Round t);

/// Complete digraph with up to `losses` seeded-random non-self-loop edges
/// removed per round (losses <= 2n-3, which keeps every emitted digraph
/// rooted; the generator asserts that and must never fire).
Scenario link_loss_adversary(std::uint32_t n, std::uint32_t losses, std::uint64_t seed);

/// One-message-per-round schedule over a connected bidirectional digraph:
/// each node cycles through its neighbors in ascending order, so the cycle
/// length is the lcm of the out-degrees. Packaged with the fixed-period
/// algorithm at period 6n, factor 1.
Scenario round_robin_transform(const Digraph& base);

enum class ScheduleClass { rooted, uniformly_rooted, strongly_connected };

struct RandomScheduleOptions {
  std::uint64_t max_cycle = 3;
  std::uint64_t max_prefix = 2;
  // Reject candidates that also satisfy the next stronger class at the
  // requested delay bound (rooted corpora exclude uniform rootedness at
  // delays <= delta; uniformly rooted corpora exclude strong connectivity).
  bool exclude_stronger = true;
  std::uint64_t budget = 20000;
};

struct RandomSchedule {
  DynamicGraph graph;
  ConnectivityClass cls;
};

/// Rejection-sampled prefix-cycle schedule whose exact classification
/// witnesses the requested class with least delay <= delta. Throws when the
/// sampling budget runs out; never silently weakens the class.
RandomSchedule random_rooted(std::uint32_t n, std::uint64_t delta, ScheduleClass cls,
                             std::uint64_t seed, const RandomScheduleOptions& opts = {});

/// Registry access for the CLI.
std::vector<std::pair<std::string, std::string>> scenario_catalog();

}  // namespace dynclock
