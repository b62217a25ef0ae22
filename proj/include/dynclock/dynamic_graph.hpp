#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <variant>
#include <vector>

#include "dynclock/digraph.hpp"

namespace dynclock {

/// Round-indexed communication schedule over a fixed node set: either an
/// eventually-periodic sequence (finite prefix followed by a repeating
/// non-empty cycle) or an arbitrary generator, total over rounds t >= 1.
///
/// Values are logically immutable and safe to share across threads; the
/// interval-product memo behind prefix-cycle schedules is mutex-guarded.
class DynamicGraph {
 public:
  using Generator = std::function<Digraph(Round)>;

  /// Trivial one-node static schedule; placeholder for default-constructed
  /// aggregates.
  DynamicGraph();

  static DynamicGraph prefix_cycle(std::vector<Digraph> prefix, std::vector<Digraph> cycle);
  static DynamicGraph static_graph(Digraph g);
  static DynamicGraph generator(std::uint32_t n, Generator fn);

  std::uint32_t node_count() const { return n_; }
  bool is_prefix_cycle() const;
  std::uint64_t prefix_length() const;
  std::uint64_t cycle_length() const;
  const std::vector<Digraph>& prefix() const;
  const std::vector<Digraph>& cycle() const;

  /// The digraph delivered at round t (t >= 1).
  Digraph at(Round t) const;

  /// Product of the round digraphs over [t, t_end]; when t_end < t this is
  /// the identity digraph with only self-loops.
  Digraph interval(Round t, Round t_end) const;

  /// In-neighbors of i in interval(t, t_end); always contains i.
  NodeMask in_neighbors(NodeId i, Round t, Round t_end) const;

  /// Earliest round with the same schedule suffix as t: prefix rounds map to
  /// themselves, in-cycle rounds fold modulo the cycle length.
  Round canonical_round(Round t) const;

 private:
  struct PrefixCycleSchedule {
    std::vector<Digraph> prefix;
    std::vector<Digraph> cycle;
  };
  struct GeneratorSchedule {
    Generator fn;
  };
  struct IntervalCache {
    std::mutex mu;
    std::unordered_map<std::uint64_t, Digraph> map;
  };

  DynamicGraph(std::uint32_t n, std::variant<PrefixCycleSchedule, GeneratorSchedule> sched);

  std::uint32_t n_;
  std::variant<PrefixCycleSchedule, GeneratorSchedule> schedule_;
  std::shared_ptr<IntervalCache> cache_;
};

}  // namespace dynclock
