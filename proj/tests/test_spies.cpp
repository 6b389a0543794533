#include <gtest/gtest.h>

#include <cmath>

#include "revspy/multipartite.hpp"
#include "revspy/registry.hpp"
#include "revspy/spies.hpp"
#include "revspy/structure.hpp"

using namespace revspy;

namespace {

Position after_rev_placement(const GameSpec& spec, const std::vector<int>& revs) {
  return apply_placement(spec, Position::initial(spec), revs, Side::Revolutionaries);
}

// Long random game; the spies must survive with every audit passing.
void expect_survival(const GameSpec& spec, SpyStrategy& spy, const std::string& rev_id, int rounds,
                     std::uint64_t seed) {
  auto rev = make_rev(rev_id, spec);
  auto t = play(spec, *rev, spy, rounds, seed);
  EXPECT_EQ(t.outcome.winner, Winner::Spies) << spy.id() << " vs " << rev_id << " seed " << seed << ": "
                                             << t.outcome.fault_message << " round " << t.outcome.round;
  for (const auto& a : t.failed_audits())
    if (a.key != "spy_count.theorem") ADD_FAILURE() << a.key << ": " << a.detail;
}

}  // namespace

TEST(DominatingVertexSpy, Placement) {
  GameSpec spec(star_graph(4), 2, 4, 2);
  auto spy = make_dominating_vertex_spy(spec);
  EXPECT_EQ(spy->place(after_rev_placement(spec, {0, 2, 2, 0, 0})), (std::vector<int>{0, 1, 1, 0, 0}));
  auto spy2 = make_dominating_vertex_spy(spec);
  EXPECT_EQ(spy2->place(after_rev_placement(spec, {4, 0, 0, 0, 0})), (std::vector<int>{2, 0, 0, 0, 0}));
  auto spy3 = make_dominating_vertex_spy(spec);
  EXPECT_EQ(spy3->place(after_rev_placement(spec, {1, 1, 1, 1, 0})), (std::vector<int>{2, 0, 0, 0, 0}));
  EXPECT_THROW(make_dominating_vertex_spy(GameSpec(cycle_graph(5), 2, 4, 2)), Error);
}

TEST(DominatingVertexSpy, TenThousandRoundsOnStar) {
  GameSpec spec(star_graph(6), 2, 5, 2);
  auto spy = make_dominating_vertex_spy(spec);
  expect_survival(spec, *spy, "rev.random", 10000, 3);
}

TEST(LocalGame, StableCounts) {
  EXPECT_EQ(stable_local_spies({1, 3, 2, 5}, 5, 2), (std::vector<int>{1, 1, 1, 2}));
  EXPECT_EQ(stable_local_spies({6, 0, 0}, 3, 2), (std::vector<int>{3, 0, 0}));
}

TEST(WebbedTreeSpy, TargetsOnPath) {
  // P4 rooted at 0; w = (3, 2, 2, 1) for revolutionaries (1, 0, 1, 1).
  auto tree = RootedTree::from_parents(0, {-1, 0, 1, 2});
  auto t = webbed_targets(tree, {1, 0, 1, 1}, 2);
  EXPECT_EQ(t, (std::vector<int>{0, 0, 1, 0}));
  EXPECT_EQ(webbed_targets(tree, {3, 0, 0, 0}, 2), (std::vector<int>{1, 0, 0, 0}));
  EXPECT_EQ(webbed_targets(tree, {0, 0, 0, 3}, 2), (std::vector<int>{0, 0, 0, 1}));
  // Telescoping: subtree sums of targets equal floor(w/m).
  auto tgt = webbed_targets(tree, {2, 1, 2, 1}, 2);
  EXPECT_EQ(tgt[0] + tgt[1] + tgt[2] + tgt[3], 3);
  EXPECT_EQ(tgt[2] + tgt[3], 1);
}

TEST(WebbedTreeSpy, AllAtRoot) {
  auto wt = random_webbed_tree(10, 5);
  GameSpec spec(wt.graph, 2, 6, 3);
  auto spy = make_webbed_tree_spy(spec, wt.tree);
  std::vector<int> revs(10, 0);
  revs[wt.tree.root] = 6;
  auto place = spy->place(after_rev_placement(spec, revs));
  EXPECT_EQ(place[wt.tree.root], 3);
}

TEST(WebbedTreeSpy, RandomTreesSurvive) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto wt = random_webbed_tree(12, seed);
    GameSpec spec(wt.graph, 2, 6, 3);
    auto spy = make_webbed_tree_spy(spec);
    expect_survival(spec, *spy, "rev.random", 500, seed);
  }
  // Fan-like webbed tree: root 0 with children 1..4 joined in a path, plus grandchildren.
  Graph fan = Graph::from_edges(9, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {1, 5}, {1, 6},
                                    {5, 6}, {4, 7}, {4, 8}});
  GameSpec spec(fan, 2, 6, 3);
  auto spy = make_webbed_tree_spy(spec);
  expect_survival(spec, *spy, "rev.random", 500, 42);
}

TEST(DominationSetSpy, PathAndCycle) {
  GameSpec p4(path_graph(4), 2, 4, 4);
  auto a = make_domination_set_spy(p4, std::vector<Vertex>{1, 2});
  expect_survival(p4, *a, "rev.random", 500, 1);
  GameSpec c6(cycle_graph(6), 2, 2, 2);
  auto b = make_domination_set_spy(c6, std::vector<Vertex>{0, 3});
  expect_survival(c6, *b, "rev.random", 500, 2);
  // One dominating vertex: same placement as the dominating-vertex spy.
  GameSpec star(star_graph(5), 2, 4, 2);
  auto pos = after_rev_placement(star, {0, 2, 1, 1, 0, 0});
  EXPECT_EQ(make_domination_set_spy(star, std::vector<Vertex>{0})->place(pos),
            make_dominating_vertex_spy(star)->place(pos));
}

TEST(Stability, FreeBoundAndSlack) {
  Graph star = star_graph(3);
  auto fb = free_bound({0, 2, 1, 1}, {0, 1, 0, 0}, 2);
  EXPECT_EQ(fb.meetings, 1);
  EXPECT_EQ(fb.free_revs, 2);
  EXPECT_EQ(fb.free_spies, 0);
  EXPECT_LT(neighbourhood_slack(star, {0, 2, 1, 1}, {0, 1, 0, 0}, 2), 0.0);
  EXPECT_GE(neighbourhood_slack(star, {0, 2, 1, 1}, {1, 1, 0, 0}, 2), 0.0);
  EXPECT_GE(neighbourhood_slack(star, {0, 0, 0, 0}, {0, 0, 0, 1}, 2), 0.0);  // no revolutionaries

  Graph k = complete_multipartite({2, 2, 2});
  // Free revolutionaries 2 (m=2): every part needs a free spy outside it.
  EXPECT_LT(multipartite_slack(k, {1, 0, 1, 0, 0, 0}, {1, 0, 0, 0, 0, 0}, 2), 0.0);
  EXPECT_GE(multipartite_slack(k, {1, 0, 1, 0, 0, 0}, {1, 0, 1, 0, 0, 0}, 2), 0.0);
}

TEST(GreedyMigration, HandTraces) {
  Graph k = complete_multipartite({4, 4});
  // (2,0) -> (1,1): the X1 spy on the emptier vertex crosses to the fullest X2 vertex.
  std::vector<int> revs = {1, 2, 0, 0, 0, 3, 1, 0};
  auto mv = greedy_migration(k, revs, {1, 1, 0, 0, 0, 0, 0, 0}, 1, 1);
  MoveSet expect;
  expect.add(0, 5);
  EXPECT_EQ(mv, expect);
  // Targets unchanged, (1,1): the spies still trade sides.
  auto swap = greedy_migration(k, revs, {0, 1, 0, 0, 0, 0, 1, 0}, 1, 1);
  MoveSet both;
  both.add(1, 5);
  both.add(6, 1);
  EXPECT_EQ(swap, both);
  // Determinism with no revolutionaries.
  std::vector<int> none(8, 0);
  EXPECT_EQ(greedy_migration(k, none, {0, 0, 1, 0, 0, 0, 0, 0}, 1, 0),
            greedy_migration(k, none, {0, 0, 1, 0, 0, 0, 0, 0}, 1, 0));
  EXPECT_THROW(greedy_migration(k, revs, {2, 0, 0, 0, 0, 0, 0, 0}, 1, 1), Error);
  EXPECT_THROW(greedy_migration(k, revs, {1, 0, 0, 0, 0, 0, 0, 0}, 1, 1), Error);

  // Random traces: exact targets, at most one spy per vertex, each spy moves once.
  Graph big = complete_multipartite({10, 10});
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> r(20), s(20, 0);
    for (int v = 0; v < 20; ++v) r[v] = (trial * 7 + v * 13) % 4;
    int total = 0;
    for (int v = 0; v < 20; ++v)
      if ((trial + v * 3) % 5 == 0 && total < 8) s[v] = 1, ++total;
    int t1 = trial % (total + 1);
    auto m = greedy_migration(big, r, s, t1, total - t1);
    EXPECT_TRUE(check_flow(big, s, m).empty());
    auto after = apply_flow(s, m);
    int side0 = 0;
    for (int v = 0; v < 20; ++v) {
      EXPECT_LE(after[v], 1);
      if (v < 10) side0 += after[v];
    }
    EXPECT_EQ(side0, t1);
    for (const auto& f : m.flows) EXPECT_EQ(f.count, 1);
  }
}

TEST(BipartiteParams, ClosedForms) {
  auto p2 = bipartite_params(2, 10);
  EXPECT_EQ(p2.s, 7);
  EXPECT_EQ(p2.alpha, 2);
  EXPECT_EQ(p2.beta, 4);
  EXPECT_LE(p2.alpha, p2.beta);
  EXPECT_LE(p2.alpha + p2.beta, p2.s);
  EXPECT_LE((10 + p2.beta) / 2, p2.s);
  auto p3 = bipartite_params(3, 10);
  EXPECT_EQ(p3.s, 5);
  EXPECT_EQ(p3.alpha, 2);
  EXPECT_EQ(p3.beta, 3);
  EXPECT_FALSE(p3.exception_branch);
  EXPECT_TRUE(bipartite_params(3, 21).exception_branch);
  EXPECT_EQ(bipartite_spy_count(2, 20), 14);  // ceil((70-3)/5)
  EXPECT_EQ(bipartite_spy_count(3, 21), 10);

  GeneralAlpha ga;
  int s = bipartite_spy_count(4, 12);
  EXPECT_EQ(s, 6);  // ceil((1+1/sqrt3)*3) + 1
  EXPECT_EQ(general_target(4, 12, s, 6, &ga), 3);
  EXPECT_NEAR(ga.x, std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(ga.alpha, 2.366, 1e-3);
  EXPECT_EQ(bipartite_spy_count(4, 8), 4);  // r/m below 1/(1-1/sqrt3)
}

TEST(BipartiteSpies, SurviveAtTheirCounts) {
  GameSpec m2(complete_multipartite({20, 20}), 2, 10, 7);
  for (const char* rev : {"rev.bipartite-m2", "rev.random", "rev.swarm-best", "rev.alternating-swarm"}) {
    auto spy = make_bipartite_spy_m2(m2);
    expect_survival(m2, *spy, rev, 200, 5);
  }
  GameSpec m3(complete_multipartite({20, 20}), 3, 10, 5);
  for (const char* rev : {"rev.bipartite-m3", "rev.random", "rev.swarm-best"}) {
    auto spy = make_bipartite_spy_m3(m3);
    expect_survival(m3, *spy, rev, 200, 6);
  }
  GameSpec gen(complete_multipartite({24, 24}), 4, 12, 6);
  for (const char* rev : {"rev.cells-m2", "rev.random", "rev.swarm-best"}) {
    auto spy = make_bipartite_spy_general(gen);
    expect_survival(gen, *spy, rev, 200, 7);
  }
}

TEST(KpartiteSpy, SurvivesSwarms) {
  EXPECT_EQ(kpartite_spy_count(3, 3, 9), 8);
  GameSpec spec(complete_multipartite({18, 18, 18}), 3, 9, 8);
  for (const char* rev : {"rev.swarm-best", "rev.alternating-swarm", "rev.kpartite-lower", "rev.random"}) {
    auto spy = make_kpartite_spy(spec);
    expect_survival(spec, *spy, rev, 200, 8);
  }
}

TEST(QCommonSpy, DenseRandomGraph) {
  Graph g = random_gnp(40, 0.9, 3);
  double q = common_neighbourhood_ratio(g);
  for (int r : {6, 24, 60}) {
    int s = qcommon_spy_count(40, q, 2, r, 1.0);
    EXPECT_GE(s, r / 2);
    GameSpec spec(g, 2, r, s);
    auto spy = make_qcommon_spy(spec);
    expect_survival(spec, *spy, "rev.random", 200, 9);
  }
}

TEST(FollowerSpy, Survives) {
  GameSpec spec(hypercube(3), 2, 3, 2);
  for (const char* rev : {"rev.hypercube-m2", "rev.random"}) {
    auto spy = make_trivial_follower_spy(spec);
    expect_survival(spec, *spy, rev, 100, 10);
  }
}
