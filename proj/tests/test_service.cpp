#include <gtest/gtest.h>

#include <thread>

#include "httplib.h"
#include "revspy/registry.hpp"
#include "revspy/serialize.hpp"
#include "revspy/service.hpp"

using namespace revspy;

TEST(Serialize, RoundTrips) {
  Graph k = complete_multipartite({2, 3});
  EXPECT_TRUE(graph_from_json(to_json(k)) == k);
  Graph q = hypercube(3);
  EXPECT_TRUE(graph_from_json(to_json(q)) == q);
  EXPECT_EQ(to_json(q)["cube_dim"], 3);
  EXPECT_TRUE(to_json(path_graph(3))["parts"].is_null());

  GameSpec spec(k, 2, 3, 1);
  GameSpec back = spec_from_json(to_json(spec));
  EXPECT_TRUE(back.g() == k);
  EXPECT_EQ(back.m, 2);
  EXPECT_EQ(back.r, 3);
  EXPECT_EQ(back.s, 1);

  Position p = Position::initial(spec);
  p.revs = {1, 0, 2, 0, 0};
  p.spies = {0, 1, 0, 0, 0};
  p.phase = Phase::SpyToMove;
  p.round = 4;
  EXPECT_EQ(position_from_json(to_json(p)), p);

  MoveSet mv;
  mv.add(0, 2);
  mv.add(2, 3, 2);
  EXPECT_EQ(moveset_from_json(to_json(mv)), mv);
  EXPECT_EQ(to_json(mv)[1], (json{{"from", 2}, {"to", 3}, {"count", 2}}));

  std::vector<int> place = {0, 2, 0, 1, 0};
  EXPECT_EQ(placement_from_json(placement_to_json(place), 5), place);
  EXPECT_EQ(placement_from_json(json::array({0, 2, 0, 1, 0}), 5), place);
  EXPECT_TRUE(placement_to_json(place)[0]["from"].is_null());
  EXPECT_THROW(placement_from_json(json::array({0, 2}), 5), Error);

  auto err = error_json("illegal_move", "bad", {{"index", 0}});
  EXPECT_EQ(err["code"], "illegal_move");
  EXPECT_EQ(err["message"], "bad");
  EXPECT_EQ(err["detail"]["index"], 0);
  EXPECT_EQ(err["schema_version"], kSchemaVersion);
}

TEST(Serialize, TranscriptFields) {
  GameSpec spec(cycle_graph(5), 2, 3, 2);
  auto t = play(spec, *make_rev("rev.random", spec), *make_spy("spy.trivial-follower", spec), 5, 3);
  json j = to_json(t);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["rev_strategy"], "rev.random");
  EXPECT_EQ(j["outcome"]["result"], "SpiesSurvive");
  EXPECT_EQ(j["outcome"]["winner"], "spies");
  EXPECT_EQ(j["rounds"].size(), 5u);
  EXPECT_EQ(j["rounds"][0]["round"], 1);
  json core = transcript_core(t);
  ASSERT_EQ(core["rounds"].size(), 5u);
  EXPECT_EQ(core["rounds"][4]["position"], j["rounds"][4]["position"]);
  EXPECT_EQ(core["rounds"][4]["position"]["revs"], to_json(t.rounds[4].position)["revs"]);
  EXPECT_EQ(core["rounds"][4]["position"]["spies"], to_json(t.rounds[4].position)["spies"]);
  EXPECT_FALSE(core.contains("seed"));
}

namespace {

class ServiceFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    install_routes(server_, sessions_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  std::pair<int, json> post(const std::string& path, const json& body) {
    auto res = client_->Post(path, body.dump(), "application/json");
    if (!res) return {0, json()};
    return {res->status, json::parse(res->body)};
  }
  std::pair<int, json> get(const std::string& path) {
    auto res = client_->Get(path);
    if (!res) return {0, json()};
    return {res->status, json::parse(res->body)};
  }

  SessionManager sessions_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::unique_ptr<httplib::Client> client_;
};

json bipartite_session(const std::string& ai = "spy.bipartite-m2") {
  return {{"graph", "bipartite:20,20"}, {"m", 2}, {"r", 10}, {"s", 6}, {"human", "revolutionaries"}, {"ai", ai},
          {"seed", 5}, {"horizon", 10}};
}

}  // namespace

TEST_F(ServiceFixture, CreateAndPlace) {
  auto [status, body] = post("/sessions", bipartite_session());
  ASSERT_EQ(status, 201);
  const json& st = body["state"];
  EXPECT_EQ(body["schema_version"], kSchemaVersion);
  EXPECT_EQ(st["status"], "awaiting_human");
  EXPECT_EQ(st["to_move"], "revolutionaries");
  EXPECT_EQ(st["position"]["phase"], "rev_placement");
  std::string id = st["id"];

  json placement = json::array();
  for (int v = 0; v < 10; ++v) placement.push_back({{"from", nullptr}, {"to", v}, {"count", 1}});
  auto [s2, b2] = post("/sessions/" + id + "/moves", {{"placement", placement}});
  ASSERT_EQ(s2, 200) << b2.dump();
  ASSERT_EQ(b2["ai_replies"].size(), 1u);
  EXPECT_EQ(b2["ai_replies"][0]["kind"], "placement");
  EXPECT_EQ(b2["state"]["to_move"], "revolutionaries");
  EXPECT_EQ(b2["state"]["position"]["phase"], "rev_to_move");
  EXPECT_EQ(b2["state"]["position"]["round"], 1);

  auto [s3, b3] = get("/sessions/" + id);
  EXPECT_EQ(s3, 200);
  EXPECT_EQ(b3["state"]["position"], b2["state"]["position"]);
}

TEST_F(ServiceFixture, IllegalMovesCarryTheOffendingEntry) {
  auto [status, body] = post("/sessions", bipartite_session());
  ASSERT_EQ(status, 201);
  std::string id = body["state"]["id"];
  json placement = json::array();  // count form: two on each of vertices 0..4
  for (int v = 0; v < 40; ++v) placement.push_back(v < 5 ? 2 : 0);
  auto [s1, b1] = post("/sessions/" + id + "/moves", {{"placement", placement}});
  ASSERT_EQ(s1, 200) << b1.dump();

  // Vertices 0 and 1 share a part: not adjacent.
  auto [s2, b2] = post("/sessions/" + id + "/moves",
                       {{"move", json::array({{{"from", 0}, {"to", 25}, {"count", 1}}, {{"from", 0}, {"to", 1}, {"count", 1}}})}});
  EXPECT_EQ(s2, 400);
  EXPECT_EQ(b2["code"], "illegal_move");
  EXPECT_EQ(b2["detail"]["index"], 1);
  EXPECT_EQ(b2["detail"]["entry"]["to"], 1);

  // Three leave a vertex holding two.
  auto [s3, b3] = post("/sessions/" + id + "/moves", {{"move", json::array({{{"from", 3}, {"to", 30}, {"count", 3}}})}});
  EXPECT_EQ(s3, 400);
  EXPECT_EQ(b3["code"], "illegal_move");
  EXPECT_EQ(b3["detail"]["vertex"], 3);
  EXPECT_EQ(b3["detail"]["leaving"], 3);
  EXPECT_EQ(b3["detail"]["present"], 2);

  // Placement after placement is over.
  auto [s4, b4] = post("/sessions/" + id + "/moves", {{"placement", placement}});
  EXPECT_EQ(s4, 409);
  EXPECT_EQ(b4["code"], "out_of_phase");

  // Nothing changed.
  auto [s5, b5] = get("/sessions/" + id);
  EXPECT_EQ(b5["state"]["position"]["round"], 1);
}

TEST_F(ServiceFixture, ErrorsAndResign) {
  auto [s0, b0] = get("/sessions/s999");
  EXPECT_EQ(s0, 404);
  EXPECT_EQ(b0["code"], "not_found");

  auto res = client_->Post("/sessions", "{not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["code"], "parse_error");

  json bad = bipartite_session();
  bad["schema_version"] = "revspy/0";
  EXPECT_EQ(post("/sessions", bad).second["code"], "schema_mismatch");
  json wrong_side = bipartite_session("rev.random");
  EXPECT_EQ(post("/sessions", wrong_side).second["code"], "strategy_mismatch");
  json unknown = bipartite_session("spy.nope");
  auto [su, bu] = post("/sessions", unknown);
  EXPECT_EQ(su, 404);
  EXPECT_EQ(bu["code"], "not_found");

  auto [s1, b1] = post("/sessions", bipartite_session());
  std::string id = b1["state"]["id"];
  auto [s2, b2] = post("/sessions/" + id + "/resign", json::object());
  EXPECT_EQ(s2, 200);
  EXPECT_EQ(b2["state"]["status"], "resigned");
  EXPECT_EQ(b2["state"]["outcome"]["winner"], "spies");
  auto [s3, b3] = post("/sessions/" + id + "/moves", {{"placement", json::array({10, 0})}});
  EXPECT_EQ(s3, 409);
  EXPECT_EQ(b3["code"], "game_over");
}

TEST_F(ServiceFixture, StrategiesAndHumanSpies) {
  auto [s0, b0] = get("/strategies");
  ASSERT_EQ(s0, 200);
  bool found = false;
  for (const auto& e : b0["strategies"]) found |= e["id"] == "spy.webbed-tree";
  EXPECT_TRUE(found);

  auto [s1, b1] = post("/sessions", {{"graph", "kpartite:6,6,6"}, {"m", 3}, {"r", 3}, {"s", 1}, {"human", "spies"},
                                     {"ai", "rev.swarm-best"}});
  ASSERT_EQ(s1, 201) << b1.dump();
  EXPECT_EQ(b1["state"]["to_move"], "spies");
  ASSERT_EQ(b1["ai_replies"].size(), 1u);
  EXPECT_EQ(b1["ai_replies"][0]["side"], "revolutionaries");
  // Revolutionaries out of turn: the human is the spy side, so any placement is a spy placement.
  std::string id = b1["state"]["id"];
  auto [s2, b2] = post("/sessions/" + id + "/moves", {{"move", json::array()}});
  EXPECT_EQ(s2, 409);
  EXPECT_EQ(b2["code"], "out_of_phase");

  auto [s3, b3] = get("/sessions/" + id + "/transcript");
  EXPECT_EQ(s3, 200);
  EXPECT_EQ(b3["rev_strategy"], "rev.swarm-best");
}

TEST_F(ServiceFixture, SessionReplaysLikeOfflinePlay) {
  // Offline game at s = sigma - 1, then the same revolutionary moves fed through HTTP.
  GameSpec spec(complete_multipartite({20, 20}), 2, 10, 6);
  auto offline = play(spec, *make_rev("rev.bipartite-m2", spec), *make_spy("spy.bipartite-m2", spec), 10, 5);
  ASSERT_EQ(offline.outcome.winner, Winner::Revolutionaries);

  auto [s0, b0] = post("/sessions", bipartite_session());
  ASSERT_EQ(s0, 201);
  std::string id = b0["state"]["id"];
  auto [s1, b1] = post("/sessions/" + id + "/moves", {{"placement", placement_to_json(offline.rev_placement)}});
  ASSERT_EQ(s1, 200) << b1.dump();
  json last = b1;
  for (const auto& round : offline.rounds) {
    auto [s, b] = post("/sessions/" + id + "/moves", {{"move", to_json(round.rev_move)}});
    ASSERT_EQ(s, 200) << b.dump();
    last = b;
  }
  EXPECT_EQ(last["state"]["status"], "finished");
  EXPECT_EQ(last["state"]["history"], transcript_core(offline));
  EXPECT_EQ(transcript_core(sessions_.transcript(id)), transcript_core(offline));
}

TEST(Sessions, ConcurrentSessionsAreIndependent) {
  SessionManager mgr;
  std::vector<std::thread> threads;
  std::vector<std::string> results(8);
  for (int i = 0; i < 8; ++i)
    threads.emplace_back([&, i] {
      json created = mgr.create(bipartite_session());
      std::string id = created["state"]["id"];
      json counts = json::array();
      for (int v = 0; v < 40; ++v) counts.push_back(v < 10 ? 1 : 0);
      mgr.submit(id, {{"placement", counts}});
      results[i] = mgr.get(id)["state"]["position"].dump();
    });
  for (auto& t : threads) t.join();
  for (int i = 1; i < 8; ++i) EXPECT_EQ(results[i], results[0]);
}
