#include <gtest/gtest.h>

#include <functional>

#include "revspy/multipartite.hpp"
#include "revspy/registry.hpp"
#include "revspy/spies.hpp"

using namespace revspy;

namespace {

// Scripted players: fixed placement, then one move per round (empty once exhausted).
class ScriptRev : public RevStrategy {
 public:
  ScriptRev(std::vector<int> place, std::vector<MoveSet> moves) : place_(std::move(place)), moves_(std::move(moves)) {}
  std::string id() const override { return "test.script-rev"; }
  std::vector<int> place() override { return place_; }
  MoveSet move(const Position&) override { return i_ < moves_.size() ? moves_[i_++] : MoveSet{}; }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<ScriptRev>(*this); }

 private:
  std::vector<int> place_;
  std::vector<MoveSet> moves_;
  std::size_t i_ = 0;
};

class ScriptSpy : public SpyStrategy {
 public:
  using Reply = std::function<MoveSet(const Position&)>;
  ScriptSpy(std::vector<int> place, Reply reply) : place_(std::move(place)), reply_(std::move(reply)) {}
  std::string id() const override { return "test.script-spy"; }
  std::vector<int> place(const Position&) override { return place_; }
  MoveSet respond(const Position& pos, const MoveSet&) override { return reply_(pos); }
  std::unique_ptr<SpyStrategy> clone() const override { return std::make_unique<ScriptSpy>(*this); }

 private:
  std::vector<int> place_;
  Reply reply_;
};

MoveSet stay(const Position&) { return {}; }

}  // namespace

TEST(Unguarded, Examples) {
  GameSpec spec(path_graph(4), 2, 4, 1);
  Position pos = Position::initial(spec);
  pos.revs = {2, 0, 2, 0};
  pos.spies = {1, 0, 0, 0};
  EXPECT_EQ(unguarded_meeting(pos, 2), Vertex{2});
  pos.spies = {0, 0, 1, 0};
  EXPECT_EQ(unguarded_meeting(pos, 2), Vertex{0});
  pos.spies = {1, 0, 1, 0};
  EXPECT_FALSE(unguarded_meeting(pos, 2).has_value());
  EXPECT_EQ(pos.meetings(2), (std::vector<Vertex>{0, 2}));
  EXPECT_EQ(pos.meetings(3), std::vector<Vertex>{});
  EXPECT_EQ(pos.spy_list(), (std::vector<Vertex>{0, 2}));
}

TEST(Legality, FlowsAndPhases) {
  GameSpec spec(path_graph(4), 2, 3, 1);
  Position pos = Position::initial(spec);
  EXPECT_EQ(pos.phase, Phase::RevPlacement);
  EXPECT_THROW(apply_placement(spec, pos, {1, 0, 0, 0}, Side::Spies), Error);
  EXPECT_THROW(apply_placement(spec, pos, {1, 1, 0, 0}, Side::Revolutionaries), Error);  // wrong total
  pos = apply_placement(spec, pos, {1, 1, 1, 0}, Side::Revolutionaries);
  EXPECT_EQ(pos.phase, Phase::SpyPlacement);
  pos = apply_placement(spec, pos, {0, 0, 0, 1}, Side::Spies);
  EXPECT_EQ(pos.phase, Phase::RevToMove);
  EXPECT_EQ(pos.round, 1);

  MoveSet jump;
  jump.add(0, 2);
  EXPECT_FALSE(legal(spec, pos, jump, Side::Revolutionaries));
  EXPECT_FALSE(illegal_reason(spec, pos, jump, Side::Revolutionaries).empty());
  MoveSet crowd;
  crowd.add(0, 1, 2);  // only one revolutionary at 0
  EXPECT_FALSE(legal(spec, pos, crowd, Side::Revolutionaries));
  MoveSet ok;
  ok.add(0, 1);
  ok.add(2, 1);
  EXPECT_TRUE(legal(spec, pos, ok, Side::Revolutionaries));
  try {
    apply_move(spec, pos, ok, Side::Spies);
    FAIL() << "spies moved out of turn";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfPhase);
  }
  try {
    apply_move(spec, pos, jump, Side::Revolutionaries);
    FAIL() << "illegal move accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllegalMove);
  }
  Position after = apply_move(spec, pos, ok, Side::Revolutionaries);
  EXPECT_EQ(after.revs, (std::vector<int>{0, 3, 0, 0}));
  EXPECT_EQ(after.phase, Phase::SpyToMove);
  MoveSet chase;
  chase.add(3, 2);
  Position next = apply_move(spec, after, chase, Side::Spies);
  EXPECT_EQ(next.round, 2);
  EXPECT_EQ(next.phase, Phase::RevToMove);
}

TEST(Legality, NormalizationMergesAndDropsStays) {
  MoveSet a;
  a.add(1, 2);
  a.add(1, 1, 3);
  a.add(1, 2);
  a.add(0, 1, 0);
  auto n = a.normalized();
  ASSERT_EQ(n.flows.size(), 1u);
  EXPECT_EQ(n.flows[0], (Flow{1, 2, 2}));
  MoveSet b;
  b.add(1, 2, 2);
  EXPECT_TRUE(a == b);
  EXPECT_TRUE(MoveSet{}.empty());
}

TEST(Play, UnguardedAtPlacementWithoutSpies) {
  GameSpec spec(path_graph(3), 2, 2, 0);
  ScriptRev rev({2, 0, 0}, {});
  ScriptSpy spy({0, 0, 0}, stay);
  auto t = play(spec, rev, spy, 10);
  EXPECT_EQ(t.outcome.winner, Winner::Revolutionaries);
  EXPECT_EQ(t.outcome.round, 0);
  EXPECT_EQ(t.outcome.vertex, Vertex{0});
  EXPECT_TRUE(t.rounds.empty());
}

TEST(Play, FollowerSurvivesOnPath) {
  // r-m+1 followers on P5 hold off random revolutionaries for the full horizon.
  GameSpec spec(path_graph(5), 2, 3, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rev = make_rev("rev.random", spec);
    auto spy = make_spy("spy.trivial-follower", spec);
    auto t = play(spec, *rev, *spy, 60, seed);
    EXPECT_EQ(t.outcome.winner, Winner::Spies) << seed;
    EXPECT_EQ(t.rounds.size(), 60u);
    EXPECT_TRUE(replay_matches(t));
  }
}

TEST(Play, ScriptedWinAndRoundNumbers) {
  // Two revolutionaries walk onto vertex 1 of P3; the single spy at 2 stays put.
  GameSpec spec(path_graph(3), 2, 2, 1);
  MoveSet m1;
  m1.add(0, 1);
  m1.add(2, 1);
  ScriptRev rev({1, 0, 1}, {m1});
  ScriptSpy idle({0, 0, 1}, stay);
  auto t = play(spec, rev, idle, 5);
  EXPECT_EQ(t.outcome.winner, Winner::Revolutionaries);
  EXPECT_EQ(t.outcome.round, 1);
  EXPECT_EQ(t.outcome.vertex, Vertex{1});
  ASSERT_EQ(t.rounds.size(), 1u);
  EXPECT_EQ(t.rounds[0].round, 1);

  ScriptRev rev2({1, 0, 1}, {m1});
  ScriptSpy guard({0, 0, 1}, [](const Position& pos) {
    MoveSet m;
    if (pos.spies[2]) m.add(2, 1);
    return m;
  });
  auto t2 = play(spec, rev2, guard, 5);
  EXPECT_EQ(t2.outcome.winner, Winner::Spies);
  EXPECT_EQ(t2.outcome.round, 5);
}

TEST(Play, IllegalSpyMoveIsAFault) {
  GameSpec spec(path_graph(4), 2, 2, 1);
  MoveSet m1;
  m1.add(0, 1);
  ScriptRev rev({1, 0, 1, 0}, {m1});
  ScriptSpy cheat({0, 0, 0, 1}, [](const Position&) {
    MoveSet m;
    m.add(3, 0);
    return m;
  });
  auto t = play(spec, rev, cheat, 3);
  EXPECT_EQ(t.outcome.winner, Winner::Fault);
  EXPECT_EQ(t.outcome.fault_side, "spies");
  EXPECT_EQ(t.outcome.fault_code, "illegal_move");
}

TEST(Play, SpiesConcedeOnlyWhenHopeless) {
  // A meeting on leaf 1 while the only spy sits on leaf 3: no cover exists.
  GameSpec spec(star_graph(3), 2, 4, 1);
  MoveSet m1;
  m1.add(0, 1);
  ScriptRev rev({1, 1, 1, 1}, {m1});
  ScriptSpy thrower({0, 0, 0, 1}, [](const Position&) -> MoveSet { fail(ErrorCode::NoCover, "gave up"); });
  auto t = play(spec, rev, thrower, 3);
  EXPECT_EQ(t.outcome.winner, Winner::Revolutionaries);
  ASSERT_EQ(t.rounds.size(), 1u);
  bool noted = false;
  for (const auto& a : t.rounds[0].audits) noted |= a.key == "engine.spies_conceded";
  EXPECT_TRUE(noted);

  // A coverable position: throwing is a fault.
  GameSpec one(star_graph(3), 2, 2, 1);
  MoveSet m2;
  m2.add(2, 0);
  ScriptRev rev2({1, 0, 1, 0}, {m2});
  ScriptSpy thrower2({1, 0, 0, 0}, [](const Position&) -> MoveSet { fail(ErrorCode::NoCover, "gave up"); });
  auto t2 = play(one, rev2, thrower2, 3);
  EXPECT_EQ(t2.outcome.winner, Winner::Fault);
}

TEST(Play, DominatingVertexSpiesHoldTheStar) {
  GameSpec spec(star_graph(6), 2, 5, 2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto rev = make_rev("rev.random", spec);
    auto spy = make_dominating_vertex_spy(spec);
    auto t = play(spec, *rev, *spy, 100, seed);
    EXPECT_EQ(t.outcome.winner, Winner::Spies) << seed;
    EXPECT_TRUE(t.failed_audits().empty());
  }
}

TEST(Play, ReplayDetectsTampering) {
  GameSpec spec(cycle_graph(6), 2, 4, 3);
  auto rev = make_rev("rev.random", spec);
  auto spy = make_spy("spy.trivial-follower", spec);
  auto t = play(spec, *rev, *spy, 30, 4);
  EXPECT_TRUE(replay_matches(t));
  auto again = play(spec, *make_rev("rev.random", spec), *make_spy("spy.trivial-follower", spec), 30, 4);
  ASSERT_EQ(again.rounds.size(), t.rounds.size());
  for (std::size_t i = 0; i < t.rounds.size(); ++i) EXPECT_EQ(again.rounds[i].position, t.rounds[i].position);
  ASSERT_FALSE(t.rounds.empty());
  t.rounds.back().position.revs[0] += 1;
  EXPECT_FALSE(replay_matches(t));
}

TEST(Swarm, PlanMatchesBruteForce) {
  Graph g = complete_multipartite({3, 3, 3});
  std::vector<std::vector<int>> rev_cases = {{1, 0, 0, 1, 1, 0, 1, 0, 0},
                                             {2, 0, 0, 1, 0, 0, 1, 1, 0},
                                             {1, 1, 1, 1, 0, 0, 0, 0, 0}};
  std::vector<std::vector<int>> spy_cases = {{0, 0, 0, 0, 0, 0, 0, 0, 0},
                                             {1, 0, 0, 0, 0, 0, 0, 0, 0},
                                             {0, 0, 0, 1, 0, 0, 1, 0, 0},
                                             {0, 1, 0, 0, 0, 0, 0, 0, 1}};
  for (const auto& revs : rev_cases)
    for (const auto& spies : spy_cases)
      for (int part = 0; part < 3; ++part) {
        auto plan = swarm_plan(g, revs, spies, part, 2);
        EXPECT_EQ(plan.new_meetings, swarm_optimum_bruteforce(g, revs, spies, part, 2))
            << "part " << part;
        EXPECT_TRUE(check_flow(g, revs, plan.move).empty());
      }
}
