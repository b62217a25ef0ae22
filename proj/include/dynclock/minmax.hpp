#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "dynclock/digraph.hpp"

namespace dynclock {

struct ViewEntry {
  std::uint64_t value = 0;
  std::uint64_t depth = 0;
  auto operator<=>(const ViewEntry&) const = default;
};

/// Finite set of (value, depth) pairs, kept sorted and deduplicated.
/// A node's view records every min-clock value it has heard of, corrected
/// for the time lag, with the depth telling how many rounds ago the value
/// held.
class View {
 public:
  View() = default;
  explicit View(std::vector<ViewEntry> entries);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  bool contains(ViewEntry e) const;
  const std::vector<ViewEntry>& entries() const { return entries_; }

  /// Smallest first component; the view must be non-empty.
  std::uint64_t min_value() const;

  void insert(ViewEntry e);

  bool operator==(const View&) const = default;

 private:
  std::vector<ViewEntry> entries_;
};

struct MinMaxState {
  std::uint64_t age = 0;  // elapsed-time clock, incremented once per step
  View view;
  std::uint64_t clock = 0;  // output clock
  bool operator==(const MinMaxState&) const = default;
};

/// Derived min-clock: the smallest value in the view.
std::uint64_t min_clock(const MinMaxState& s);

/// The message is the sender's whole view, unmodified.
inline const View& minmax_send(const MinMaxState& s) { return s.view; }

struct MinMaxStepResult {
  MinMaxState state;
  // Set when every received view was empty and the step fell back to
  // recording value 0 at depth zero. Only an arbitrary pre-step state can
  // trigger this; any stepped state has a non-empty view.
  bool degenerate_repair = false;
};

/// One transition: union the received views, age every entry by one round,
/// record the new min-clock at depth zero, advance the elapsed-time clock,
/// and output the largest value whose depth d satisfies 2d <= age.
///
/// `received` must include the node's own view (the engine guarantees the
/// self-loop).
MinMaxStepResult minmax_step(const MinMaxState& state,
                             const std::vector<const View*>& received);

/// Window length after which the kernel has reached everyone.
std::uint64_t kernel_window(std::uint32_t n, std::uint64_t delta, std::uint32_t kernel_size);

/// Stabilization bound from measured trace quantities: the round from which
/// all output clocks agree and advance in lockstep.
Round minmax_stabilization_bound(std::uint64_t reach_window, Round s0, Round t0,
                                 std::uint64_t max_initial_age);

/// Closed-form bounds for schedules with a finite diameter, resp. uniformly
/// rooted schedules with radius R.
Round minmax_diameter_bound(std::uint64_t diameter, std::uint64_t max_initial_age);
Round minmax_uniform_bound(std::uint64_t diameter, std::uint64_t radius,
                           std::uint64_t max_initial_age);

}  // namespace dynclock
