#include "dynclock/digraph.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace dynclock {

NodeMask full_mask(std::uint32_t n) {
  if (n == 0) return 0;
  if (n >= 64) return ~NodeMask{0};
  return (NodeMask{1} << n) - 1;
}

std::vector<NodeId> mask_to_nodes(NodeMask m) {
  std::vector<NodeId> out;
  for (NodeMask rest = m; rest; rest &= rest - 1)
    out.push_back(static_cast<NodeId>(std::countr_zero(rest)));
  return out;
}

NodeMask nodes_to_mask(const std::vector<NodeId>& nodes) {
  NodeMask m = 0;
  for (NodeId i : nodes) m |= NodeMask{1} << i;
  return m;
}

std::uint32_t mask_size(NodeMask m) { return static_cast<std::uint32_t>(std::popcount(m)); }

std::string mask_to_string(NodeMask m) {
  std::string s = "{";
  bool first = true;
  for (NodeId i : mask_to_nodes(m)) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

Digraph::Digraph(std::uint32_t n) : n_(n), rows_(n) {
  if (n == 0 || n > kMaxNodes)
    throw std::invalid_argument("digraph node count must be in [1, 64], got " + std::to_string(n));
  for (NodeId i = 0; i < n; ++i) rows_[i] = NodeMask{1} << i;
}

Digraph Digraph::complete(std::uint32_t n) {
  Digraph g(n);
  for (NodeId i = 0; i < n; ++i) g.rows_[i] = full_mask(n);
  return g;
}

Digraph Digraph::from_edges(std::uint32_t n,
                            const std::vector<std::pair<NodeId, NodeId>>& edges) {
  Digraph g(n);
  for (auto [from, to] : edges) g.add_edge(from, to);
  return g;
}

bool Digraph::has_edge(NodeId from, NodeId to) const {
  if (from >= n_ || to >= n_) throw std::out_of_range("edge endpoint out of range");
  return mask_contains(rows_[from], to);
}

void Digraph::add_edge(NodeId from, NodeId to) {
  if (from >= n_ || to >= n_) throw std::out_of_range("edge endpoint out of range");
  rows_[from] |= NodeMask{1} << to;
}

void Digraph::remove_edge(NodeId from, NodeId to) {
  if (from >= n_ || to >= n_) throw std::out_of_range("edge endpoint out of range");
  if (from == to) return;
  rows_[from] &= ~(NodeMask{1} << to);
}

NodeMask Digraph::in_mask(NodeId to) const {
  if (to >= n_) throw std::out_of_range("node out of range");
  NodeMask m = 0;
  for (NodeId i = 0; i < n_; ++i)
    if (mask_contains(rows_[i], to)) m |= NodeMask{1} << i;
  return m;
}

std::vector<std::pair<NodeId, NodeId>> Digraph::edges(bool with_self_loops) const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId i = 0; i < n_; ++i)
    for (NodeId j : mask_to_nodes(rows_[i]))
      if (with_self_loops || i != j) out.emplace_back(i, j);
  return out;
}

std::size_t Digraph::edge_count() const {
  std::size_t c = 0;
  for (NodeId i = 0; i < n_; ++i) c += mask_size(rows_[i]);
  return c;
}

bool Digraph::is_complete() const {
  for (NodeId i = 0; i < n_; ++i)
    if (rows_[i] != full_mask(n_)) return false;
  return true;
}

bool Digraph::is_bidirectional() const {
  for (NodeId i = 0; i < n_; ++i)
    for (NodeId j : mask_to_nodes(rows_[i]))
      if (!mask_contains(rows_[j], i)) return false;
  return true;
}

Digraph Digraph::transitive_closure() const {
  Digraph c = *this;
  // Bit-parallel Warshall: after step k, rows reflect paths with
  // intermediate nodes <= k.
  for (NodeId k = 0; k < n_; ++k)
    for (NodeId i = 0; i < n_; ++i)
      if (mask_contains(c.rows_[i], k)) c.rows_[i] |= c.rows_[k];
  return c;
}

NodeMask Digraph::roots() const {
  Digraph c = transitive_closure();
  NodeMask r = 0;
  for (NodeId i = 0; i < n_; ++i)
    if (c.rows_[i] == full_mask(n_)) r |= NodeMask{1} << i;
  return r;
}

Digraph product(const Digraph& a, const Digraph& b) {
  if (a.n_ != b.n_)
    throw std::invalid_argument("digraph product requires matching node counts (" +
                                std::to_string(a.n_) + " vs " + std::to_string(b.n_) + ")");
  Digraph r(a.n_);
  for (NodeId i = 0; i < a.n_; ++i) {
    NodeMask row = 0;
    for (NodeMask mid = a.rows_[i]; mid; mid &= mid - 1)
      row |= b.rows_[static_cast<NodeId>(std::countr_zero(mid))];
    r.rows_[i] = row;
  }
  return r;
}

}  // namespace dynclock
