#include <stdexcept>

#include <random>

#include "doctest.h"
#include "dynclock/dynamic_graph.hpp"
#include "dynclock/random.hpp"
#include "support/oracles.hpp"

using namespace dynclock;

namespace {

Digraph random_digraph(std::mt19937_64& rng, std::uint32_t n, double density) {
  Digraph g(n);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j)
      if (i != j && chance(rng, density)) g.add_edge(i, j);
  return g;
}

// Reference product: enumerate all (i,k,j) triples.
Digraph product_by_triples(const Digraph& a, const Digraph& b) {
  Digraph r(a.node_count());
  for (NodeId i = 0; i < a.node_count(); ++i)
    for (NodeId k = 0; k < a.node_count(); ++k)
      for (NodeId j = 0; j < a.node_count(); ++j)
        if (a.has_edge(i, k) && b.has_edge(k, j)) r.add_edge(i, j);
  return r;
}

// Reference roots: iterate the edge-scan image to a fixpoint per node.
NodeMask roots_by_search(const Digraph& g) {
  NodeMask roots = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    NodeMask reach = NodeMask{1} << i;
    for (;;) {
      NodeMask next = reach | oracle::image(g, reach);
      if (next == reach) break;
      reach = next;
    }
    if (reach == full_mask(g.node_count())) roots |= NodeMask{1} << i;
  }
  return roots;
}

}  // namespace

TEST_CASE("self-loops are present from construction and indestructible") {
  Digraph g(4);
  for (NodeId i = 0; i < 4; ++i) CHECK(g.has_edge(i, i));
  g.remove_edge(2, 2);
  CHECK(g.has_edge(2, 2));
  CHECK(g.edge_count() == 4);
  CHECK(g.edges(false).empty());
}

TEST_CASE("node count limits") {
  CHECK_THROWS_AS(Digraph(0), std::invalid_argument);
  CHECK_THROWS_AS(Digraph(65), std::invalid_argument);
  CHECK_NOTHROW(Digraph(64));
}

TEST_CASE("product relays through a middle node") {
  Digraph g1 = Digraph::from_edges(3, {{0, 1}});
  Digraph g2 = Digraph::from_edges(3, {{1, 2}});
  CHECK(product(g1, g2).has_edge(0, 2));
}

TEST_CASE("identity digraph is neutral for the product") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 20; ++it) {
    Digraph g = random_digraph(rng, 5, 0.4);
    CHECK(product(g, Digraph(5)) == g);
    CHECK(product(Digraph(5), g) == g);
  }
}

TEST_CASE("squared two-edge chain matches the triple enumeration") {
  Digraph g = Digraph::from_edges(3, {{0, 1}, {1, 2}});
  Digraph got = product(g, g);
  CHECK(got == product_by_triples(g, g));
  Digraph want = Digraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(got == want);
}

TEST_CASE("product rejects mismatched node counts") {
  CHECK_THROWS_AS(product(Digraph(3), Digraph(4)), std::invalid_argument);
}

TEST_CASE("product is associative and matches the reference on random triples") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    Digraph a = random_digraph(rng, 5, 0.3);
    Digraph b = random_digraph(rng, 5, 0.3);
    Digraph c = random_digraph(rng, 5, 0.3);
    CHECK(product(a, b) == product_by_triples(a, b));
    CHECK(product(product(a, b), c) == product(a, product(b, c)));
  }
}

TEST_CASE("with self-loops both operands embed into the product") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 30; ++it) {
    Digraph a = random_digraph(rng, 6, 0.3);
    Digraph b = random_digraph(rng, 6, 0.3);
    Digraph p = product(a, b);
    for (NodeId i = 0; i < 6; ++i) {
      CHECK((a.out_mask(i) & ~p.out_mask(i)) == 0);
      CHECK((b.out_mask(i) & ~p.out_mask(i)) == 0);
    }
  }
}

TEST_CASE("roots of the standard examples") {
  CHECK(Digraph::complete(4).roots() == full_mask(4));
  // 0 -> 1, 1 <-> 2: only node 0 reaches everyone
  Digraph h = Digraph::from_edges(3, {{0, 1}, {1, 2}, {2, 1}});
  CHECK(h.roots() == nodes_to_mask({0}));
  // two isolated self-loops: nobody is a root
  CHECK(Digraph(2).roots() == 0);
}

TEST_CASE("roots agree with the search-based reference on random digraphs") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 60; ++it) {
    Digraph g = random_digraph(rng, 6, 0.25);
    CHECK(g.roots() == roots_by_search(g));
  }
}

TEST_CASE("empty interval is the identity, single interval is the round digraph") {
  DynamicGraph dg = DynamicGraph::static_graph(Digraph::from_edges(3, {{0, 1}}));
  CHECK(dg.interval(5, 4) == Digraph(3));
  CHECK(dg.interval(3, 3) == dg.at(3));
}

TEST_CASE("two-round interval over a chain relays the edge") {
  Digraph chain = Digraph::from_edges(3, {{0, 1}, {1, 2}});
  DynamicGraph dg = DynamicGraph::static_graph(chain);
  CHECK(dg.interval(1, 2).has_edge(0, 2));
}

TEST_CASE("interval satisfies the composition law") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 20; ++it) {
    std::vector<Digraph> pre, cyc;
    std::uint64_t p = uniform_u64(rng, 0, 2), L = uniform_u64(rng, 1, 3);
    for (std::uint64_t k = 0; k < p; ++k) pre.push_back(random_digraph(rng, 4, 0.3));
    for (std::uint64_t k = 0; k < L; ++k) cyc.push_back(random_digraph(rng, 4, 0.3));
    DynamicGraph dg = DynamicGraph::prefix_cycle(pre, cyc);
    for (int q = 0; q < 10; ++q) {
      Round t = uniform_u64(rng, 1, 6);
      Round t_end = t + uniform_u64(rng, 1, 5);
      Round s = uniform_u64(rng, t, t_end - 1);
      CHECK(dg.interval(t, t_end) == product(dg.interval(t, s), dg.interval(s + 1, t_end)));
    }
  }
}

TEST_CASE("interval agrees with the brute-force temporal reachability") {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 15; ++it) {
    std::vector<Digraph> cyc;
    std::uint64_t L = uniform_u64(rng, 1, 4);
    for (std::uint64_t k = 0; k < L; ++k) cyc.push_back(random_digraph(rng, 5, 0.3));
    DynamicGraph dg = DynamicGraph::prefix_cycle({}, cyc);
    std::vector<Digraph> delivered;
    for (Round r = 1; r <= 12; ++r) delivered.push_back(dg.at(r));
    for (Round t = 1; t <= 6; ++t)
      for (Round e = t; e <= 10; ++e) {
        Digraph w = dg.interval(t, e);
        for (NodeId i = 0; i < 5; ++i)
          CHECK(w.out_mask(i) == oracle::reachable(delivered, i, t, e));
      }
  }
}

TEST_CASE("in-neighbors always include the node itself") {
  DynamicGraph dg = DynamicGraph::static_graph(Digraph::from_edges(4, {{0, 1}}));
  CHECK(dg.in_neighbors(2, 7, 3) == nodes_to_mask({2}));  // empty window
  // out-star around node 0: a leaf hears the hub and itself
  Digraph star = Digraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  DynamicGraph sdg = DynamicGraph::static_graph(star);
  CHECK(sdg.in_neighbors(1, 1, 1) == nodes_to_mask({0, 1}));
}

TEST_CASE("per-round in-neighbor unions are included in the interval set, sometimes strictly") {
  std::mt19937_64 rng(31);
  bool strict_seen = false;
  for (int it = 0; it < 40; ++it) {
    std::vector<Digraph> cyc;
    std::uint64_t L = uniform_u64(rng, 1, 3);
    for (std::uint64_t k = 0; k < L; ++k) cyc.push_back(random_digraph(rng, 4, 0.3));
    DynamicGraph dg = DynamicGraph::prefix_cycle({}, cyc);
    for (Round t = 1; t <= 4; ++t)
      for (Round e = t; e <= t + 3; ++e)
        for (NodeId i = 0; i < 4; ++i) {
          NodeMask unions = 0;
          for (Round s = t; s <= e; ++s) unions |= dg.in_neighbors(i, s, s);
          NodeMask interval_set = dg.in_neighbors(i, t, e);
          CHECK((unions & ~interval_set) == 0);
          strict_seen = strict_seen || (interval_set & ~unions) != 0;
        }
  }
  // chain 0 -> 1 -> 2 exhibits strictness at node 2 over two rounds
  DynamicGraph chain = DynamicGraph::static_graph(Digraph::from_edges(3, {{0, 1}, {1, 2}}));
  NodeMask unions = chain.in_neighbors(2, 1, 1) | chain.in_neighbors(2, 2, 2);
  CHECK(mask_contains(chain.in_neighbors(2, 1, 2) & ~unions, 0));
  CHECK(strict_seen);
}

TEST_CASE("generator schedules validate node counts") {
  DynamicGraph dg = DynamicGraph::generator(3, [](Round t) { return Digraph(t == 2 ? 4 : 3); });
  CHECK_NOTHROW(dg.at(1));
  CHECK_THROWS_AS(dg.at(2), std::runtime_error);
}
