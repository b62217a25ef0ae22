#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dynclock {

using NodeId = std::uint32_t;
using Round = std::uint64_t;

// Node sets are bits of a 64-bit mask; graphs are capped at 64 nodes, well
// above the working scale of the analyses.
using NodeMask = std::uint64_t;

inline constexpr std::uint32_t kMaxNodes = 64;

NodeMask full_mask(std::uint32_t n);

inline bool mask_contains(NodeMask m, NodeId i) { return (m >> i) & 1u; }

std::vector<NodeId> mask_to_nodes(NodeMask m);
NodeMask nodes_to_mask(const std::vector<NodeId>& nodes);
std::uint32_t mask_size(NodeMask m);
std::string mask_to_string(NodeMask m);

/// Directed graph over a fixed node set, stored as per-node out-neighbor
/// bitmasks. Every node carries a self-loop; construction inserts them and
/// they cannot be removed.
class Digraph {
 public:
  explicit Digraph(std::uint32_t n);

  static Digraph complete(std::uint32_t n);
  static Digraph from_edges(std::uint32_t n,
                            const std::vector<std::pair<NodeId, NodeId>>& edges);

  std::uint32_t node_count() const { return n_; }

  bool has_edge(NodeId from, NodeId to) const;
  void add_edge(NodeId from, NodeId to);
  void remove_edge(NodeId from, NodeId to);  // self-loops are kept

  NodeMask out_mask(NodeId from) const { return rows_[from]; }
  NodeMask in_mask(NodeId to) const;

  /// Ordered edge list; self-loops included only on request.
  std::vector<std::pair<NodeId, NodeId>> edges(bool with_self_loops = false) const;
  std::size_t edge_count() const;

  bool is_complete() const;
  bool is_bidirectional() const;

  /// Nodes with a path to every node.
  NodeMask roots() const;
  bool is_rooted() const { return roots() != 0; }
  bool is_strongly_connected() const { return roots() == full_mask(n_); }

  /// Reachability closure (paths of any length, including length zero).
  Digraph transitive_closure() const;

  bool operator==(const Digraph&) const = default;

  friend Digraph product(const Digraph& a, const Digraph& b);

 private:
  std::uint32_t n_;
  std::vector<NodeMask> rows_;
};

/// Graph composition: edge (i,j) iff some k has (i,k) in a and (k,j) in b.
/// Self-loops in both operands guarantee self-loops in the result and make
/// the edge sets of both operands subsets of the result.
Digraph product(const Digraph& a, const Digraph& b);

}  // namespace dynclock
