#include <stdexcept>

#include <random>

#include "doctest.h"
#include "dynclock/io.hpp"
#include "dynclock/presets.hpp"
#include "dynclock/random.hpp"

using namespace dynclock;

namespace {

DynamicGraph random_schedule(std::mt19937_64& rng) {
  std::vector<Digraph> pre, cyc;
  std::uint64_t p = uniform_u64(rng, 0, 2), L = uniform_u64(rng, 1, 3);
  auto make = [&] {
    Digraph g(4);
    for (NodeId i = 0; i < 4; ++i)
      for (NodeId j = 0; j < 4; ++j)
        if (i != j && chance(rng, 0.3)) g.add_edge(i, j);
    return g;
  };
  for (std::uint64_t k = 0; k < p; ++k) pre.push_back(make());
  for (std::uint64_t k = 0; k < L; ++k) cyc.push_back(make());
  return DynamicGraph::prefix_cycle(pre, cyc);
}

}  // namespace

TEST_CASE("schedule text round-trips") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 25; ++it) {
    DynamicGraph dg = random_schedule(rng);
    DynamicGraph back = parse_schedule(write_schedule(dg));
    CHECK(back.prefix() == dg.prefix());
    CHECK(back.cycle() == dg.cycle());
  }
}

TEST_CASE("schedule writer shows self-loop-only rounds as empty blocks") {
  std::string text = write_schedule(DynamicGraph::static_graph(Digraph(3)));
  CHECK(text == "n=3\ncycle:\nround 1:\n");
}

TEST_CASE("schedule parser reports the offending line") {
  CHECK_THROWS_WITH_AS(parse_schedule("n=3\ncycle:\nround 2: (0,1)\n"),
                       doctest::Contains("line 3"), std::runtime_error);
  CHECK_THROWS_AS(parse_schedule("cycle:\nround 1:\n"), std::runtime_error);   // missing n
  CHECK_THROWS_AS(parse_schedule("n=3\nround 1:\n"), std::runtime_error);      // missing cycle
  CHECK_THROWS_AS(parse_schedule("n=3\ncycle:\n"), std::runtime_error);        // empty cycle
  CHECK_THROWS_AS(parse_schedule("n=2\ncycle:\nround 1: (0,5)\n"), std::out_of_range);
}

TEST_CASE("schedule parser skips comments, blanks, and init lines") {
  DynamicGraph dg = parse_schedule(
      "# a scenario file\n\nn=2\ncycle:\nround 1: (0,1)\ninit sap 0: C=1 M=1\n");
  CHECK(dg.node_count() == 2);
  CHECK(dg.at(1).has_edge(0, 1));
}

TEST_CASE("init vectors round-trip for every algorithm") {
  InitialStates mm = random_minmax_states(3, 5);
  CHECK(parse_init(write_init(mm)) == mm);

  InitialStates empty_view = std::vector<MinMaxState>{{2, View(), 7}};
  CHECK(parse_init(write_init(empty_view)) == empty_view);

  InitialStates sap = random_sap_states(4, 6);
  CHECK(parse_init(write_init(sap)) == sap);

  InitialStates fixed = std::vector<std::uint64_t>{4, 0, 9};
  CHECK(parse_init(write_init(fixed)) == fixed);
}

TEST_CASE("init parser rejects gaps and mixed algorithms") {
  CHECK_THROWS_AS(parse_init("init sap 1: C=0 M=1\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_init("init sap 0: C=0 M=1\ninit minmax 1: h=0 C=0 view=(0,0)\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_init(""), std::runtime_error);
}
