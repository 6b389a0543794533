#include <gtest/gtest.h>

#include "revspy/registry.hpp"
#include "revspy/revs.hpp"
#include "revspy/solver.hpp"
#include "revspy/spies.hpp"

using namespace revspy;

namespace {

void expect_exhaustive_win(const GameSpec& spec, const RevStrategy& rev, int rounds) {
  auto rep = exhaustive_spy_adversary(spec, rev, rounds);
  EXPECT_TRUE(rep.rev_always_wins) << rev.id() << " s=" << spec.s << ": survived with a placement of "
                                   << rep.counter_placement.size() << " vertices";
  EXPECT_GT(rep.placements, 0u);
}

// Every registered spy strategy that accepts the game, for a few seeds.
void expect_beats_all_spies(const GameSpec& spec, const std::string& rev_id, int horizon) {
  for (const auto& e : list_strategies()) {
    if (e.side != Side::Spies || e.id == "spy.solver") continue;
    std::unique_ptr<SpyStrategy> probe;
    try {
      probe = make_spy(e.id, spec);
    } catch (const Error&) {
      continue;
    }
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto t = play(spec, *make_rev(rev_id, spec), *make_spy(e.id, spec), horizon, seed);
      EXPECT_EQ(t.outcome.winner, Winner::Revolutionaries) << rev_id << " vs " << e.id << " seed " << seed;
      EXPECT_LE(t.outcome.round, horizon);
    }
  }
}

}  // namespace

TEST(HypercubeAttack, ExhaustiveSmallCubes) {
  GameSpec q3(hypercube(3), 2, 3, 1);
  expect_exhaustive_win(q3, *make_hypercube_attack_m2(q3), 2);
  GameSpec q4(hypercube(4), 2, 4, 2);
  expect_exhaustive_win(q4, *make_hypercube_attack_m2(q4), 2);
}

TEST(HypercubeAttack, PlacementOnWeightOne) {
  GameSpec q4(hypercube(4), 2, 4, 2);
  auto place = make_hypercube_attack_m2(q4)->place();
  for (Vertex v = 0; v < 16; ++v) EXPECT_EQ(place[v], __builtin_popcount(v) == 1 ? 1 : 0);
}

TEST(BipartiteAttacks, PlacementWinsWithoutSpies) {
  GameSpec m2(complete_multipartite({20, 20}), 2, 10, 0);
  auto t = play(m2, *make_bipartite_attack_m2(m2), *make_spy("spy.random", m2), 5);
  // Distinct placement: no meeting at placement, so the first swarm wins.
  EXPECT_EQ(t.outcome.winner, Winner::Revolutionaries);
  EXPECT_LE(t.outcome.round, 2);
  GameSpec k3(complete_multipartite({18, 18, 18}), 3, 9, 0);
  auto t3 = play(k3, *make_kpartite_lower_attack(k3), *make_spy("spy.random", k3), 5);
  EXPECT_EQ(t3.outcome.winner, Winner::Revolutionaries);
}

TEST(BipartiteAttacks, ExhaustiveAtSmallR) {
  GameSpec m2(complete_multipartite({8, 8}), 2, 4, bipartite_m2_beaten(4));
  EXPECT_EQ(m2.s, 2);
  expect_exhaustive_win(m2, *make_bipartite_attack_m2(m2), 2);
  GameSpec m3(complete_multipartite({8, 8}), 3, 4, bipartite_m3_beaten(4));
  EXPECT_EQ(m3.s, 1);
  expect_exhaustive_win(m3, *make_bipartite_attack_m3(m3), 2);
}

TEST(BipartiteAttacks, BeatImplementedSpies) {
  EXPECT_EQ(bipartite_m2_beaten(10), 6);
  EXPECT_EQ(bipartite_m3_beaten(8), 3);
  expect_beats_all_spies(GameSpec(complete_multipartite({20, 20}), 2, 10, 6), "rev.bipartite-m2", 2);
  expect_beats_all_spies(GameSpec(complete_multipartite({16, 16}), 3, 8, 3), "rev.bipartite-m3", 2);
  expect_beats_all_spies(GameSpec(complete_multipartite({20, 20}), 3, 10, 4), "rev.bipartite-m3", 2);
}

TEST(CellGrouping, Thresholds) {
  expect_beats_all_spies(GameSpec(complete_multipartite({48, 48}), 6, 24, 5), "rev.cells-m3", 2);
  expect_beats_all_spies(GameSpec(complete_multipartite({40, 40}), 4, 20, 5), "rev.cells-m2", 2);
}

TEST(KpartiteLower, Threshold) {
  EXPECT_EQ(kpartite_lower_beaten(3, 3, 9), 2);
  expect_beats_all_spies(GameSpec(complete_multipartite({18, 18, 18}), 3, 9, 2), "rev.kpartite-lower", 1);
}

TEST(ReplicatedAttack, CodeCenters) {
  GameSpec small(hypercube(4), 2, 8, 1);
  EXPECT_THROW(make_replicated_hypercube_attack(small), Error);
  auto centers = replicated_centers(10, 2);
  ASSERT_EQ(centers.size(), 2u);
  EXPECT_GE(__builtin_popcount(centers[0] ^ centers[1]), 9);
  // Radius-4 balls around the centers are disjoint.
  for (Vertex v = 0; v < 1024; ++v)
    EXPECT_FALSE(__builtin_popcount(v ^ centers[0]) <= 4 && __builtin_popcount(v ^ centers[1]) <= 4);
  GameSpec big(hypercube(10), 2, 20, 8);
  auto place = make_replicated_hypercube_attack(big)->place();
  int total = 0;
  for (int c : place) total += c;
  EXPECT_EQ(total, 20);
  for (Vertex v = 0; v < 1024; ++v)
    if (place[v]) EXPECT_EQ(std::min(__builtin_popcount(v ^ centers[0]), __builtin_popcount(v ^ centers[1])), 1);
}

TEST(WideCube, GeneralAttackWins) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto a = run_wide_cube_attack(80, 2, 80, 80 - 78, seed);
    EXPECT_TRUE(a.found) << a.detail;
    EXPECT_TRUE(a.revs_win) << a.detail;
    EXPECT_GE(a.min_start_distance, 2);
    EXPECT_EQ(a.rounds, 1);
    auto b = run_wide_cube_attack(120, 3, 120, 3, seed);
    EXPECT_TRUE(b.revs_win) << b.detail;
    EXPECT_GE(b.min_start_distance, 3);
    EXPECT_EQ(b.rounds, 2);
  }
}

TEST(Constructions, OneRoundAttacks) {
  auto sg = split_graph_construction(2, 4);
  GameSpec split(sg.graph, 2, 4, 2);
  expect_exhaustive_win(split, *make_split_attack(split, sg), 1);
  auto dg = domination_sharp_construction(2, 2, 4);
  GameSpec dom(dg.graph, 2, 4, 2);  // floor(t(r/m - 1)) = 2
  expect_exhaustive_win(dom, *make_domsharp_attack(dom, dg), 1);
}

TEST(Pullback, IdentityRetractionMatchesInner) {
  Graph q = hypercube(3);
  RetractionMap id{q, {}, {}};
  for (Vertex v = 0; v < 8; ++v) id.image.push_back(v), id.map.push_back(v);
  ASSERT_TRUE(is_retraction(id));
  GameSpec spec(q, 2, 3, 1);
  auto wrapped = make_retract_pullback(spec, id, [](const GameSpec& s) { return make_hypercube_attack_m2(s); }, q);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto a = play(spec, *wrapped->clone(), *make_spy("spy.random", spec), 10, seed);
    auto inner = make_hypercube_attack_m2(spec);
    auto b = play(spec, *inner, *make_spy("spy.random", spec), 10, seed);
    EXPECT_EQ(a.rev_placement, b.rev_placement);
    ASSERT_EQ(a.rounds.size(), b.rounds.size());
    for (std::size_t i = 0; i < a.rounds.size(); ++i) EXPECT_EQ(a.rounds[i].position, b.rounds[i].position);
    EXPECT_EQ(a.outcome.winner, b.outcome.winner);
  }
}

TEST(Pullback, ProductOfPathsExhaustive) {
  Graph p3 = path_graph(3);
  auto pr = product_retraction({{p3, {0, 1}}, {p3, {0, 1}}, {p3, {0, 1}}});
  GameSpec spec(pr.map.host, 2, 3, 1);
  auto rev = make_retract_pullback(spec, pr.map, [](const GameSpec& s) { return make_hypercube_attack_m2(s); },
                                   pr.cube);
  expect_exhaustive_win(spec, *rev, 2);
}
