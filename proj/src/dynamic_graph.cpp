#include "dynclock/dynamic_graph.hpp"

#include <stdexcept>

namespace dynclock {

namespace {

constexpr std::size_t kIntervalCacheLimit = 1 << 18;

void require_uniform(const std::vector<Digraph>& gs, std::uint32_t n, const char* what) {
  for (const Digraph& g : gs)
    if (g.node_count() != n)
      throw std::invalid_argument(std::string(what) + " digraphs must share one node count");
}

}  // namespace

DynamicGraph::DynamicGraph(std::uint32_t n,
                           std::variant<PrefixCycleSchedule, GeneratorSchedule> sched)
    : n_(n), schedule_(std::move(sched)), cache_(std::make_shared<IntervalCache>()) {}

DynamicGraph::DynamicGraph()
    : DynamicGraph(1, PrefixCycleSchedule{{}, {Digraph(1)}}) {}

DynamicGraph DynamicGraph::prefix_cycle(std::vector<Digraph> prefix, std::vector<Digraph> cycle) {
  if (cycle.empty()) throw std::invalid_argument("prefix-cycle schedule needs a non-empty cycle");
  std::uint32_t n = cycle.front().node_count();
  require_uniform(prefix, n, "prefix");
  require_uniform(cycle, n, "cycle");
  return DynamicGraph(n, PrefixCycleSchedule{std::move(prefix), std::move(cycle)});
}

DynamicGraph DynamicGraph::static_graph(Digraph g) {
  std::vector<Digraph> cycle;
  cycle.push_back(std::move(g));
  return prefix_cycle({}, std::move(cycle));
}

DynamicGraph DynamicGraph::generator(std::uint32_t n, Generator fn) {
  if (!fn) throw std::invalid_argument("generator schedule needs a callable");
  if (n == 0 || n > kMaxNodes) throw std::invalid_argument("node count out of range");
  return DynamicGraph(n, GeneratorSchedule{std::move(fn)});
}

bool DynamicGraph::is_prefix_cycle() const {
  return std::holds_alternative<PrefixCycleSchedule>(schedule_);
}

std::uint64_t DynamicGraph::prefix_length() const { return prefix().size(); }

std::uint64_t DynamicGraph::cycle_length() const { return cycle().size(); }

const std::vector<Digraph>& DynamicGraph::prefix() const {
  if (!is_prefix_cycle()) throw std::logic_error("schedule is not prefix-cycle");
  return std::get<PrefixCycleSchedule>(schedule_).prefix;
}

const std::vector<Digraph>& DynamicGraph::cycle() const {
  if (!is_prefix_cycle()) throw std::logic_error("schedule is not prefix-cycle");
  return std::get<PrefixCycleSchedule>(schedule_).cycle;
}

Digraph DynamicGraph::at(Round t) const {
  if (t == 0) throw std::invalid_argument("rounds are numbered from 1");
  if (const auto* pc = std::get_if<PrefixCycleSchedule>(&schedule_)) {
    std::uint64_t p = pc->prefix.size();
    if (t <= p) return pc->prefix[t - 1];
    return pc->cycle[(t - p - 1) % pc->cycle.size()];
  }
  Digraph g = std::get<GeneratorSchedule>(schedule_).fn(t);
  if (g.node_count() != n_)
    throw std::runtime_error("generator produced a digraph with the wrong node count at round " +
                             std::to_string(t));
  return g;
}

Round DynamicGraph::canonical_round(Round t) const {
  if (const auto* pc = std::get_if<PrefixCycleSchedule>(&schedule_)) {
    std::uint64_t p = pc->prefix.size();
    if (t <= p) return t;
    return p + 1 + (t - p - 1) % pc->cycle.size();
  }
  return t;
}

Digraph DynamicGraph::interval(Round t, Round t_end) const {
  if (t == 0) throw std::invalid_argument("rounds are numbered from 1");
  if (t_end < t) return Digraph(n_);
  if (!is_prefix_cycle()) {
    Digraph acc = at(t);
    for (Round s = t + 1; s <= t_end; ++s) acc = product(acc, at(s));
    return acc;
  }

  // Window content depends only on the canonical start phase and the length,
  // so overlapping queries share one memo. Every partial product along the
  // fold is cached: sweeps over growing windows cost one product per step.
  Round start = canonical_round(t);
  std::uint64_t len = t_end - t + 1;
  auto key = [&](std::uint64_t l) { return (start << 32) | l; };

  std::scoped_lock lock(cache_->mu);
  auto& map = cache_->map;
  std::uint64_t have = 0;
  Digraph acc(n_);
  for (std::uint64_t l = len; l >= 1; --l) {
    auto it = map.find(key(l));
    if (it != map.end()) {
      have = l;
      acc = it->second;
      break;
    }
  }
  if (have == 0) {
    acc = at(start);
    have = 1;
    if (map.size() < kIntervalCacheLimit) map.emplace(key(1), acc);
  }
  for (std::uint64_t l = have + 1; l <= len; ++l) {
    acc = product(acc, at(start + l - 1));
    if (map.size() < kIntervalCacheLimit) map.emplace(key(l), acc);
  }
  return acc;
}

NodeMask DynamicGraph::in_neighbors(NodeId i, Round t, Round t_end) const {
  if (i >= n_) throw std::out_of_range("node out of range");
  return interval(t, t_end).in_mask(i);
}

}  // namespace dynclock
