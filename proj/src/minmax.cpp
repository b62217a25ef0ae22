#include "dynclock/minmax.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynclock {

View::View(std::vector<ViewEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
}

bool View::contains(ViewEntry e) const {
  return std::binary_search(entries_.begin(), entries_.end(), e);
}

std::uint64_t View::min_value() const {
  if (entries_.empty()) throw std::logic_error("min of an empty view");
  // Sorted lexicographically, so the front holds the smallest value.
  return entries_.front().value;
}

void View::insert(ViewEntry e) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), e);
  if (it != entries_.end() && *it == e) return;
  entries_.insert(it, e);
}

std::uint64_t min_clock(const MinMaxState& s) { return s.view.min_value(); }

MinMaxStepResult minmax_step(const MinMaxState& state,
                             const std::vector<const View*>& received) {
  // Union of the received views, each entry aged by one round.
  std::vector<ViewEntry> merged;
  std::size_t total = 0;
  for (const View* v : received) total += v->size();
  merged.reserve(total + 1);
  for (const View* v : received)
    for (ViewEntry e : v->entries()) merged.push_back({e.value + 1, e.depth + 1});
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  MinMaxStepResult r;
  if (merged.empty()) {
    r.degenerate_repair = true;
    merged.push_back({0, 0});
  } else {
    // Record the new min-clock at depth zero. Aged entries all have depth
    // >= 1, so the insertion point is the front.
    merged.insert(merged.begin(), ViewEntry{merged.front().value, 0});
  }

  r.state.age = state.age + 1;
  r.state.view = View(std::move(merged));
  std::uint64_t best = 0;
  for (ViewEntry e : r.state.view.entries())
    if (2 * e.depth <= r.state.age && e.value > best) best = e.value;
  r.state.clock = best;
  return r;
}

std::uint64_t kernel_window(std::uint32_t n, std::uint64_t delta, std::uint32_t kernel_size) {
  if (kernel_size > n) throw std::invalid_argument("kernel larger than node set");
  return delta * (n - kernel_size);
}

Round minmax_stabilization_bound(std::uint64_t reach_window, Round s0, Round t0,
                                 std::uint64_t max_initial_age) {
  Round bound = s0 + reach_window;
  bound = std::max(bound, t0 + reach_window + 1);
  bound = std::max(bound, 2 * (reach_window + 1));
  bound = std::max(bound, 2 * t0 + max_initial_age);
  return bound;
}

Round minmax_diameter_bound(std::uint64_t diameter, std::uint64_t max_initial_age) {
  return 2 * diameter + max_initial_age;
}

Round minmax_uniform_bound(std::uint64_t diameter, std::uint64_t radius,
                           std::uint64_t max_initial_age) {
  return 2 * diameter + 2 * radius + max_initial_age;
}

}  // namespace dynclock
