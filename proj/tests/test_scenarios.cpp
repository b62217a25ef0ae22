#include <stdexcept>

#include "doctest.h"
#include "dynclock/scenarios.hpp"
#include "support/checks.hpp"
#include "support/oracles.hpp"

using namespace dynclock;

TEST_CASE("chain adversary validates its parameter inequalities") {
  CHECK_NOTHROW(chain_counterexample(2, 3, 5));
  CHECK_THROWS_AS(chain_counterexample(2, 3, 4), std::invalid_argument);  // n must exceed PM/2+1
  CHECK_THROWS_AS(chain_counterexample(3, 3, 9), std::invalid_argument);  // odd period
  CHECK_THROWS_AS(chain_counterexample(2, 4, 9), std::invalid_argument);  // even factor
}

TEST_CASE("chain adversary: two clock values forever, never synchronized") {
  Scenario s = chain_counterexample(2, 3, 5);
  REQUIRE(s.advertised.has_value());
  CHECK(s.advertised->diameter == Eccentricity::finite(4));

  Execution ex{s.algorithm, s.graph, s.init, s.suggested_horizon};
  SapTrace t = run_sap(ex);
  CHECK(!detect_sync(t).synchronized);
  CHECK(s.closed_form(ExecutionTrace{t}).empty());
  // exactly one node holds the leading value whenever it is 0 mod PM
  for (Round r = 0; r <= t.rounds(); ++r) {
    if (r % 6 != 0) continue;
    int at_lead = 0;
    for (NodeId i = 0; i < 5; ++i) at_lead += t.states[r][i].clock == 0;
    CHECK(at_lead == 1);
  }
}

TEST_CASE("trailing-node adversary matches its closed forms") {
  Scenario s = h_counterexample(2, 4);
  REQUIRE(s.advertised.has_value());
  CHECK(*s.advertised->uniformly_rooted_with_delay == 1);
  CHECK(s.advertised->uniform_root_set == nodes_to_mask({0}));

  Execution ex{s.algorithm, s.graph, s.init, s.suggested_horizon};
  SapTrace t = run_sap(ex);
  CHECK(!detect_sync(t).synchronized);
  CHECK(s.closed_form(ExecutionTrace{t}).empty());
  // spot-check the wrap round: at t = PM the leader is back at 1
  const std::uint64_t pm = 8;
  REQUIRE(t.rounds() >= pm);
  CHECK(t.states[pm][0].clock == 1);
  CHECK(t.states[pm][1].clock == 1);
  CHECK(t.states[pm][2].clock == 0);
}

TEST_CASE("rooted adversary blocks follow the recurrence") {
  auto blocks = rooted_cex_blocks(2, 2, 1, GrowthFunction::successor(), 4);
  REQUIRE(blocks.size() == 4);
  CHECK(blocks[0].start == 0);
  CHECK(blocks[0].length == 3);  // P*M - c = 4 - 1
  CHECK(blocks[1].factor == 4);  // g^2(2)
  CHECK(blocks[1].clock == 3);
  CHECK(blocks[1].length == 5);
  CHECK(blocks[2].factor == 8);
  CHECK(blocks[2].clock == 5);
  CHECK(blocks[2].length == 11);
  CHECK(blocks[3].length == 25);
  CHECK(blocks[0].reset_is_last);
  CHECK(!blocks[1].reset_is_last);
}

TEST_CASE("rooted adversary invariant holds on the initial state") {
  CHECK(rooted_cex_invariant({1, 2}, {1, 2}, {0, 2}, 2));
  CHECK(!rooted_cex_invariant({2, 2}, {2, 2}, {0, 2}, 2));  // clock congruent to 0
  CHECK(!rooted_cex_invariant({3, 2}, {3, 2}, {0, 2}, 2));  // within one of the wrap
  CHECK(!rooted_cex_invariant({1, 2}, {1, 2}, {1, 2}, 2));  // reset node not at zero
}

TEST_CASE("rooted adversary rejects out-of-range starting clocks") {
  CHECK_THROWS_AS(rooted_cex_blocks(2, 2, 2, GrowthFunction::successor(), 2),
                  std::invalid_argument);  // congruent to 0
  CHECK_THROWS_AS(rooted_cex_blocks(2, 2, 3, GrowthFunction::successor(), 2),
                  std::invalid_argument);  // P*M - 2 exceeded
  // constant growth collapses the recurrence after one block with c = 1
  CHECK_THROWS_AS(rooted_cex_blocks(2, 2, 1, GrowthFunction::constant(2), 2),
                  std::invalid_argument);
}

TEST_CASE("rooted adversary schedule shape and classification evidence") {
  Scenario s = rooted_counterexample(2, 2, 1, GrowthFunction::successor(), 4);
  // block 0: one broadcast round, the back-edge round, the silent round
  Digraph broadcast = Digraph::from_edges(3, {{0, 1}, {0, 2}});
  Digraph back_k = Digraph::from_edges(3, {{0, 1}, {0, 2}, {2, 0}});
  Digraph back_j = Digraph::from_edges(3, {{0, 1}, {0, 2}, {1, 0}});
  CHECK(s.graph.at(1) == broadcast);
  CHECK(s.graph.at(2) == back_k);
  CHECK(s.graph.at(3) == Digraph(3));
  // block 1 (length 5) alternates to the other back edge
  CHECK(s.graph.at(7) == back_j);
  CHECK(s.graph.at(8) == Digraph(3));

  // every two-round window is rooted, single rounds are not (the silent one)
  std::vector<Digraph> delivered;
  for (Round t = 1; t <= 46; ++t) delivered.push_back(s.graph.at(t));
  bool some_round_unrooted = false;
  for (Round t = 1; t + 1 <= 44; ++t) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < 3; ++i)
      for (NodeId j : mask_to_nodes(oracle::reachable(delivered, i, t, t + 1)))
        edges.emplace_back(i, j);
    CHECK(Digraph::from_edges(3, edges).is_rooted());
    some_round_unrooted = some_round_unrooted || !delivered[t - 1].is_rooted();
  }
  CHECK(some_round_unrooted);
}

TEST_CASE("rooted adversary: node 0 is the only demonstrably central node") {
  Scenario s = rooted_counterexample(2, 2, 1, GrowthFunction::successor(), 4);
  CHECK(eccentricity_probe(s.graph, 0, 8, 40) == Eccentricity::finite(2));
  CHECK(eccentricity_probe(s.graph, 1, 8, 40) == Eccentricity::exceeds_cap(8));
  CHECK(eccentricity_probe(s.graph, 2, 8, 40) == Eccentricity::exceeds_cap(8));

  // kernel {0}: from any start, everyone hears node 0 within delta*(n-1) = 4
  std::vector<Digraph> delivered;
  for (Round t = 1; t <= 46; ++t) delivered.push_back(s.graph.at(t));
  for (Round t = 1; t <= 40; ++t)
    for (NodeId i = 0; i < 3; ++i)
      CHECK(mask_contains(oracle::in_neighbors(delivered, i, t, t + 4), 0));

  // the serializable stand-in keeps the class: rooted with delay exactly 2
  REQUIRE(s.exportable_graph.has_value());
  ConnectivityClass c = classify(*s.exportable_graph);
  CHECK(c.rooted_with_delay == std::optional<std::uint64_t>{2});
}

TEST_CASE("rooted adversary run: invariant alternates, never synchronizes") {
  Scenario s = rooted_counterexample(2, 2, 1, GrowthFunction::successor(), 4);
  Execution ex{s.algorithm, s.graph, s.init, s.suggested_horizon};
  SapTrace t = run_sap(ex);
  CHECK(!detect_sync(t).synchronized);
  CHECK(s.closed_form(ExecutionTrace{t}).empty());
  CHECK(checks::sap_core(t).empty());
}

TEST_CASE("star alternation schedules") {
  Scenario strict = star_alternation_2cycle(4);
  REQUIRE(strict.advertised.has_value());
  CHECK(*strict.advertised->rooted_with_delay == 1);
  CHECK(strict.advertised->eccentricity[2] == Eccentricity::infinite());

  // growing runs: 1,1,2,2,3,3,...
  std::vector<NodeId> hubs;
  for (Round t = 1; t <= 12; ++t) hubs.push_back(star_hub_at(t));
  CHECK(hubs == std::vector<NodeId>{0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1});

  // the hub keeps reaching everyone eventually, yet no fixed window length
  // works from every start: the kernel-center gap the strict cycle cannot show
  Scenario growing = star_alternation_growing(4);
  std::vector<Digraph> delivered;
  for (Round t = 1; t <= 70; ++t) delivered.push_back(growing.graph.at(t));
  for (Round t = 1; t <= 40; ++t) {
    NodeMask reach = 0;
    for (Round e = t; e <= 70 && reach != full_mask(4); ++e)
      reach = oracle::reachable(delivered, 0, t, e);
    CHECK(reach == full_mask(4));
  }
  CHECK(eccentricity_probe(growing.graph, 0, 6, 40) == Eccentricity::exceeds_cap(6));
}

TEST_CASE("link-loss adversary parameters and rootedness") {
  CHECK_THROWS_AS(link_loss_adversary(6, 10, 1), std::invalid_argument);  // 2n-3 = 9
  Scenario none = link_loss_adversary(4, 0, 1);
  for (Round t = 1; t <= 5; ++t) CHECK(none.graph.at(t) == Digraph::complete(4));

  Scenario s = link_loss_adversary(6, 9, 7);
  for (Round t = 1; t <= 500; ++t) {
    Digraph g = s.graph.at(t);
    CHECK(g.is_rooted());
    CHECK(g.edge_count() == 36 - 9);
  }
  // deterministic per (seed, round)
  CHECK(s.graph.at(17) == link_loss_adversary(6, 9, 7).graph.at(17));
  CHECK(s.graph.at(17) != link_loss_adversary(6, 9, 8).graph.at(17));
}

TEST_CASE("round-robin over a two-node pair is static") {
  Digraph pair = Digraph::from_edges(2, {{0, 1}, {1, 0}});
  Scenario s = round_robin_transform(pair);
  CHECK(s.graph.cycle_length() == 1);
  CHECK(s.graph.at(1) == pair);
}

TEST_CASE("round-robin over a three-node path alternates the middle node") {
  Digraph path = Digraph::from_edges(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}});
  Scenario s = round_robin_transform(path);
  CHECK(s.graph.cycle_length() == 2);
  CHECK(s.graph.at(1).has_edge(1, 0));
  CHECK(!s.graph.at(1).has_edge(1, 2));
  CHECK(s.graph.at(2).has_edge(1, 2));
  // ends keep their single neighbor every round
  CHECK(s.graph.at(1).has_edge(0, 1));
  CHECK(s.graph.at(2).has_edge(0, 1));
}

TEST_CASE("round-robin over a four-cycle: period two, diameter within three times n") {
  Digraph square = Digraph::from_edges(4, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 0}, {0, 3}});
  Scenario s = round_robin_transform(square);
  CHECK(s.graph.cycle_length() == 2);
  REQUIRE(s.advertised.has_value());
  REQUIRE(s.advertised->diameter.is_finite());
  CHECK(s.advertised->diameter.value <= 12);
}

TEST_CASE("round-robin rejects one-way or disconnected bases") {
  CHECK_THROWS_AS(round_robin_transform(Digraph::from_edges(2, {{0, 1}})), std::invalid_argument);
  CHECK_THROWS_AS(round_robin_transform(Digraph(3)), std::invalid_argument);
}

TEST_CASE("a strongly connected pair with delay one is the complete digraph") {
  RandomSchedule sc = random_rooted(2, 1, ScheduleClass::strongly_connected, 11);
  for (Round t = 1; t <= sc.graph.prefix_length() + sc.graph.cycle_length(); ++t)
    CHECK(sc.graph.at(t) == Digraph::complete(2));
}

TEST_CASE("random schedules hit the requested class exactly") {
  for (std::uint64_t seed : {1, 2, 3}) {
    RandomSchedule sc = random_rooted(5, 2, ScheduleClass::strongly_connected, seed);
    REQUIRE(sc.cls.strongly_connected_with_delay.has_value());
    CHECK(*sc.cls.strongly_connected_with_delay <= 2);

    RandomSchedule ur = random_rooted(5, 2, ScheduleClass::uniformly_rooted, seed);
    REQUIRE(ur.cls.uniformly_rooted_with_delay.has_value());
    CHECK(*ur.cls.uniformly_rooted_with_delay <= 2);
    CHECK(ur.cls.center != full_mask(5));
    CHECK(ur.cls.uniform_root_set == ur.cls.center);

    RandomSchedule ro = random_rooted(5, 2, ScheduleClass::rooted, seed);
    REQUIRE(ro.cls.rooted_with_delay.has_value());
    CHECK(*ro.cls.rooted_with_delay <= 2);
    CHECK((!ro.cls.uniformly_rooted_with_delay || *ro.cls.uniformly_rooted_with_delay > 2));
  }
}

TEST_CASE("scenario catalog lists every constructor") {
  auto cat = scenario_catalog();
  CHECK(cat.size() == 8);
}
