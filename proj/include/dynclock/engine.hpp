#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dynclock/dynamic_graph.hpp"
#include "dynclock/minmax.hpp"
#include "dynclock/sap.hpp"

namespace dynclock {

struct MinMaxAlgorithm {};

struct SapAlgorithm {
  SapConfig config;
};

/// Fixed period factor: runs as the adaptive algorithm with constant growth
/// and a uniform initial factor, which reproduces the fixed-modulus step
/// exactly.
struct SapFixedAlgorithm {
  std::uint64_t period = 1;
  std::uint64_t period_factor = 1;
};

using Algorithm = std::variant<MinMaxAlgorithm, SapAlgorithm, SapFixedAlgorithm>;

using InitialStates = std::variant<std::vector<MinMaxState>,  // minmax
                                   std::vector<SapState>,     // sap
                                   std::vector<std::uint64_t>>;  // sap-fixed clocks

struct Execution {
  Algorithm algorithm;
  DynamicGraph graph;
  InitialStates initial_states;
  Round horizon = 1;
  std::uint64_t seed = 0;  // recorded for reproducibility; the run itself is deterministic
  // Stop once the synchronization predicate has held for confirmation_window
  // consecutive rounds past its earliest satisfaction (0 picks the default:
  // 2P for mod-P, 3 for exact lockstep). Counterexample scenarios run the
  // full horizon.
  bool early_stop = false;
  Round confirmation_window = 0;
  // Dropping views keeps long minmax runs small; scalar series stay.
  bool retain_views = true;
};

struct SapTrace {
  SapConfig config;
  bool fixed_period = false;
  std::uint64_t fixed_factor = 0;
  DynamicGraph graph;
  Round horizon = 0;
  std::uint64_t seed = 0;
  std::vector<Digraph> delivered;               // [t-1], t = 1..rounds()
  std::vector<std::vector<SapState>> states;    // [t][i], t = 0..rounds(); [0] after pre-reduction
  std::vector<std::vector<std::uint8_t>> growth_fired;  // [t-1][i]
  std::vector<std::vector<NodeId>> min_source;          // [t-1][i]: lowest-id in-neighbor with minimal clock

  Round rounds() const { return delivered.size(); }
  std::uint32_t node_count() const { return graph.node_count(); }
};

struct MinMaxTrace {
  DynamicGraph graph;
  Round horizon = 0;
  std::uint64_t seed = 0;
  bool views_retained = true;
  std::vector<Digraph> delivered;
  // Scalar series, [t][i] with t = 0..rounds().
  std::vector<std::vector<std::uint64_t>> age;
  std::vector<std::vector<std::uint64_t>> min_clock;  // derived from the view
  std::vector<std::vector<std::uint64_t>> clock;
  std::vector<std::vector<std::uint64_t>> view_size;
  std::vector<std::vector<View>> views;                  // only when retained
  std::vector<std::vector<std::uint8_t>> degenerate;     // [t-1][i]

  Round rounds() const { return delivered.size(); }
  std::uint32_t node_count() const { return graph.node_count(); }
};

using ExecutionTrace = std::variant<MinMaxTrace, SapTrace>;

MinMaxTrace run_minmax(const Execution& ex);
SapTrace run_sap(const Execution& ex);
ExecutionTrace run(const Execution& ex);

struct SyncVerdict {
  enum class Mode { exact_incrementing, mod_p };
  bool synchronized = false;
  Round round = 0;  // earliest round from which the predicate holds through the trace
  Mode mode = Mode::mod_p;
  std::uint64_t period = 0;  // mod-p only
  std::string to_string() const;
};

/// Earliest executed round from which all clocks are congruent modulo the
/// period through the end of the trace.
SyncVerdict detect_sync(const SapTrace& trace);

/// Earliest executed round from which all output clocks are equal and
/// advance by exactly one per round through the end of the trace.
SyncVerdict detect_sync(const MinMaxTrace& trace);

SyncVerdict detect_sync(const ExecutionTrace& trace);

struct SettleMeasurement {
  bool settled = false;
  std::string note;
  std::vector<Round> settle_round;  // per node, first round from which min_clock(t) - t is constant
  Round r0 = 0;                     // max of the settle rounds
  Round s0 = 0;                     // first round past the schedule prefix
  Round t0 = 0;                     // r0 + 1 + (n - |kernel|) * delta
  std::int64_t kernel_constant = 0;  // min_clock(t) - t on kernel nodes from t0 on
};

/// Reads the settling data of the min-clock drifts off a trace. s0 defaults
/// to prefix length + 1 and must be supplied for generator schedules.
SettleMeasurement measure_settling(const MinMaxTrace& trace, NodeMask kernel,
                                   std::uint64_t delta,
                                   std::optional<Round> s0 = std::nullopt);

struct CenterMetrics {
  bool stabilized = false;
  std::string note;
  Round stabilization_round = 0;   // first round from which the center runs in lockstep
  std::uint64_t center_factor = 0; // the common period factor inside the center
  // Indexed by t - stabilization_round.
  std::vector<std::uint64_t> common_clock;
  std::vector<NodeMask> z_synchronized;  // nodes congruent to the center clock
  std::vector<std::optional<std::uint64_t>> min_unsynced_factor;  // absent once everyone agrees
};

/// Center-relative metrics of a SAP trace: the round from which the center
/// processes share one clock and one factor, and per-round sets of nodes
/// already congruent with them.
CenterMetrics center_metrics(const SapTrace& trace, NodeMask center, std::uint64_t period);

}  // namespace dynclock
