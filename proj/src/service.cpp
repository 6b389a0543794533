#include "revspy/service.hpp"

#include "httplib.h"
#include "revspy/matching.hpp"
#include "revspy/registry.hpp"

namespace revspy {

struct Session {
  std::mutex mu;
  std::string id;
  GameSpec spec;
  Side human = Side::Revolutionaries;
  std::unique_ptr<RevStrategy> ai_rev;
  std::unique_ptr<SpyStrategy> ai_spy;
  std::string ai_id;
  int horizon = 0;
  Position pos;
  Transcript t;
  RoundRecord current;  // round in progress
  bool finished = false;
  bool resigned = false;
};

namespace {

Side parse_side(const std::string& s) {
  if (s == "revolutionaries" || s == "revs") return Side::Revolutionaries;
  if (s == "spies") return Side::Spies;
  throw ServiceError(400, "parse_error", "side must be 'revolutionaries' or 'spies'");
}

std::optional<Side> to_move(const Session& s) {
  if (s.finished) return std::nullopt;
  switch (s.pos.phase) {
    case Phase::RevPlacement:
    case Phase::RevToMove: return Side::Revolutionaries;
    case Phase::SpyPlacement:
    case Phase::SpyToMove: return Side::Spies;
    case Phase::Finished: break;
  }
  return std::nullopt;
}

std::vector<AuditNote> ai_audits(Session& s) {
  return s.ai_rev ? s.ai_rev->audit(s.pos) : s.ai_spy->audit(s.pos);
}

void finish(Session& s, Winner w, int round, std::optional<Vertex> v) {
  s.finished = true;
  s.t.outcome.winner = w;
  s.t.outcome.round = round;
  s.t.outcome.vertex = v;
  s.pos.phase = Phase::Finished;
}

void ai_fault(Session& s, const std::exception& e) {
  finish(s, Winner::Fault, s.pos.round, std::nullopt);
  s.t.outcome.fault_side = side_name(s.human == Side::Revolutionaries ? Side::Spies : Side::Revolutionaries);
  auto* err = dynamic_cast<const Error*>(&e);
  s.t.outcome.fault_code = err ? error_code_name(err->code()) : "exception";
  s.t.outcome.fault_message = e.what();
}

// Bookkeeping after a placement or a move, mirroring play(): win checks follow the
// spy placement and every spy phase; the game ends at the horizon.
void after_step(Session& s, Phase before) {
  if (before == Phase::SpyPlacement) {
    s.t.placed = s.pos;
    s.t.placement_audits = ai_audits(s);
    if (s.spec.initial_check)
      if (auto v = unguarded_meeting(s.pos, s.spec.m)) finish(s, Winner::Revolutionaries, 0, v);
  } else if (before == Phase::SpyToMove) {
    s.current.position = s.pos;
    s.current.audits = ai_audits(s);
    s.t.rounds.push_back(s.current);
    s.current = RoundRecord{};
    const int round = s.t.rounds.back().round;
    if (auto v = unguarded_meeting(s.pos, s.spec.m)) finish(s, Winner::Revolutionaries, round, v);
    else if (round >= s.horizon) finish(s, Winner::Spies, round, std::nullopt);
  }
}

void apply_placement_step(Session& s, const std::vector<int>& counts, Side side) {
  Phase before = s.pos.phase;
  s.pos = apply_placement(s.spec, s.pos, counts, side);
  (side == Side::Revolutionaries ? s.t.rev_placement : s.t.spy_placement) = counts;
  after_step(s, before);
}

void apply_move_step(Session& s, const MoveSet& move, Side side) {
  Phase before = s.pos.phase;
  MoveSet norm = move.normalized();
  s.pos = apply_move(s.spec, s.pos, norm, side);
  if (side == Side::Revolutionaries) {
    s.current.round = s.pos.round;
    s.current.rev_move = norm;
  } else {
    s.current.spy_move = norm;
  }
  after_step(s, before);
}

// Runs the AI until the human is to move or the game ends. Returns the AI's actions.
json advance_ai(Session& s) {
  json replies = json::array();
  while (auto side = to_move(s)) {
    if (*side == s.human) break;
    const Phase ph = s.pos.phase;
    try {
      if (ph == Phase::RevPlacement || ph == Phase::SpyPlacement) {
        auto counts = s.ai_rev ? s.ai_rev->place() : s.ai_spy->place(s.pos);
        apply_placement_step(s, counts, *side);
        replies.push_back({{"side", side_name(*side)}, {"kind", "placement"}, {"placement", placement_to_json(counts)}});
      } else {
        MoveSet mv;
        if (s.ai_rev) {
          mv = s.ai_rev->move(s.pos);
        } else {
          try {
            mv = s.ai_spy->respond(s.pos, s.current.rev_move);
          } catch (const std::exception&) {
            // Same concession rule as play(): a lost position lets the spies stay.
            if (coverable(s.pos.meetings(s.spec.m), s.pos.spy_list(), s.spec.g())) throw;
            mv = MoveSet{};
          }
        }
        apply_move_step(s, mv, *side);
        replies.push_back({{"side", side_name(*side)}, {"kind", "move"}, {"move", to_json(mv.normalized())}});
      }
    } catch (const std::exception& e) {
      ai_fault(s, e);
      break;
    }
  }
  return replies;
}

json state_json(const Session& s) {
  json j{{"schema_version", kSchemaVersion},
         {"id", s.id},
         {"spec", to_json(s.spec)},
         {"human", side_name(s.human)},
         {"ai_strategy", s.ai_id},
         {"horizon", s.horizon},
         {"position", to_json(s.pos)}};
  auto side = to_move(s);
  j["to_move"] = side ? json(side_name(*side)) : json(nullptr);
  j["status"] = s.resigned ? "resigned" : s.finished ? "finished" : "awaiting_human";
  j["outcome"] = s.finished ? to_json(s.t.outcome) : json(nullptr);
  j["meetings"] = s.pos.meetings(s.spec.m);
  j["history"] = transcript_core(s.t);
  return j;
}

// First entry responsible for an illegal move, for the error detail.
json offending_entry(const GameSpec& spec, const std::vector<int>& counts, const MoveSet& move) {
  for (std::size_t i = 0; i < move.flows.size(); ++i) {
    MoveSet one;
    one.flows.push_back(move.flows[i]);
    one.flows.back().count = std::max(0, one.flows.back().count);
    auto why = check_flow(spec.g(), std::vector<int>(spec.n(), INT32_MAX), one);
    if (move.flows[i].count < 0) why = "negative count";
    if (!why.empty()) {
      const auto& f = move.flows[i];
      return {{"index", i}, {"entry", {{"from", f.from}, {"to", f.to}, {"count", f.count}}}, {"reason", why}};
    }
  }
  std::vector<long long> out(counts.size(), 0);
  for (const auto& f : move.flows)
    if (f.from != f.to) out[f.from] += f.count;
  for (std::size_t v = 0; v < counts.size(); ++v)
    if (out[v] > counts[v]) {
      json entries = json::array();
      for (std::size_t i = 0; i < move.flows.size(); ++i)
        if (move.flows[i].from == v && move.flows[i].to != v) entries.push_back(i);
      return {{"vertex", v}, {"leaving", out[v]}, {"present", counts[v]}, {"indices", entries}};
    }
  return nullptr;
}

ServiceError translate(const Error& e) {
  const std::string code = error_code_name(e.code());
  switch (e.code()) {
    case ErrorCode::NotFound: return ServiceError(404, code, e.what());
    case ErrorCode::OutOfPhase:
    case ErrorCode::GameOver: return ServiceError(409, code, e.what());
    default: return ServiceError(400, code, e.what());
  }
}

Graph graph_from_request(const json& g) {
  if (g.is_string()) return parse_family(g.get<std::string>());
  if (g.is_object()) return graph_from_json(g);
  throw ServiceError(400, "parse_error", "graph must be a family string or a graph object");
}

}  // namespace

SessionManager::SessionManager() = default;
SessionManager::~SessionManager() = default;

std::shared_ptr<Session> SessionManager::find(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "not_found", "no session '" + id + "'");
  return it->second;
}

json SessionManager::create(const json& body) {
  auto s = std::make_shared<Session>();
  try {
    if (!body.is_object()) throw ServiceError(400, "parse_error", "request body must be an object");
    if (body.contains("schema_version") && body["schema_version"] != kSchemaVersion)
      throw ServiceError(400, "schema_mismatch", "unsupported schema version", {{"expected", kSchemaVersion}});
    const json& spec_in = body.contains("spec") ? body["spec"] : body;
    if (!spec_in.contains("graph")) throw ServiceError(400, "parse_error", "missing field 'graph'");
    s->spec = GameSpec(graph_from_request(spec_in["graph"]), spec_in.value("m", 0), spec_in.value("r", 0),
                       spec_in.value("s", -1));
    s->spec.validate();
    s->human = parse_side(body.value("human", std::string("revolutionaries")));
    s->ai_id = body.value("ai", std::string(s->human == Side::Revolutionaries ? "spy.cover" : "rev.swarm-best"));
    const bool ai_is_spy = s->ai_id.rfind("spy.", 0) == 0;
    if (ai_is_spy != (s->human == Side::Revolutionaries))
      throw ServiceError(400, "strategy_mismatch", "AI strategy '" + s->ai_id + "' plays the human's side");
    if (ai_is_spy) s->ai_spy = make_spy(s->ai_id, s->spec);
    else s->ai_rev = make_rev(s->ai_id, s->spec);
    s->horizon = body.value("horizon", default_horizon(s->spec));
    if (s->horizon < 1) throw ServiceError(400, "invalid_argument", "horizon must be at least 1");
    const std::uint64_t seed = body.value("seed", std::uint64_t{0});
    // Same seeding as play(), so a session replays like an offline game.
    if (s->ai_rev) s->ai_rev->reseed(seed);
    else s->ai_spy->reseed(seed ^ 0x5bd1e995ULL);
    s->pos = Position::initial(s->spec);
    s->t.spec = s->spec;
    s->t.seed = seed;
    s->t.rev_strategy = s->ai_rev ? s->ai_id : "human";
    s->t.spy_strategy = s->ai_spy ? s->ai_id : "human";
    s->t.outcome.horizon = s->horizon;
  } catch (const Error& e) {
    throw translate(e);
  } catch (const json::exception& e) {
    throw ServiceError(400, "parse_error", e.what());
  }
  {
    std::lock_guard lock(mu_);
    s->id = "s" + std::to_string(next_id_++);
    sessions_[s->id] = s;
  }
  std::lock_guard lock(s->mu);
  json replies = advance_ai(*s);
  return {{"schema_version", kSchemaVersion}, {"state", state_json(*s)}, {"ai_replies", replies}};
}

json SessionManager::get(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  return {{"schema_version", kSchemaVersion}, {"state", state_json(*s)}};
}

json SessionManager::submit(const std::string& id, const json& body) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  if (s->finished) throw ServiceError(409, "game_over", "the game is over", {{"outcome", to_json(s->t.outcome)}});
  const Side side = *to_move(*s);
  if (side != s->human)
    throw ServiceError(409, "out_of_phase", "it is not the human's turn", {{"phase", phase_name(s->pos.phase)}});
  const bool placing = s->pos.phase == Phase::RevPlacement || s->pos.phase == Phase::SpyPlacement;
  try {
    if (placing) {
      if (!body.contains("placement"))
        throw ServiceError(409, "out_of_phase", "a placement is expected", {{"phase", phase_name(s->pos.phase)}});
      auto counts = placement_from_json(body["placement"], s->spec.n());
      try {
        apply_placement_step(*s, counts, side);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::IllegalMove)
          throw ServiceError(400, "illegal_move", e.what(), {{"placement", placement_to_json(counts)}});
        throw;
      }
    } else {
      const json& mv = body.is_array() ? body : body.contains("move") ? body["move"] : json();
      if (mv.is_null()) {
        if (body.contains("placement"))
          throw ServiceError(409, "out_of_phase", "placement is over", {{"phase", phase_name(s->pos.phase)}});
        throw ServiceError(400, "parse_error", "missing field 'move'");
      }
      MoveSet move = moveset_from_json(mv);
      const auto& counts = side == Side::Revolutionaries ? s->pos.revs : s->pos.spies;
      auto why = check_flow(s->spec.g(), counts, move);
      if (!why.empty()) throw ServiceError(400, "illegal_move", why, offending_entry(s->spec, counts, move));
      apply_move_step(*s, move, side);
    }
  } catch (const Error& e) {
    throw translate(e);
  } catch (const json::exception& e) {
    throw ServiceError(400, "parse_error", e.what());
  }
  json replies = advance_ai(*s);
  return {{"schema_version", kSchemaVersion}, {"state", state_json(*s)}, {"ai_replies", replies}};
}

json SessionManager::resign(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  if (s->finished) throw ServiceError(409, "game_over", "the game is over", {{"outcome", to_json(s->t.outcome)}});
  s->resigned = true;
  finish(*s, s->human == Side::Revolutionaries ? Winner::Spies : Winner::Revolutionaries, s->pos.round, std::nullopt);
  return {{"schema_version", kSchemaVersion}, {"state", state_json(*s)}};
}

json SessionManager::strategies() const {
  json a = json::array();
  for (const auto& e : list_strategies())
    a.push_back({{"id", e.id}, {"side", side_name(e.side)}, {"summary", e.summary}});
  return {{"schema_version", kSchemaVersion}, {"strategies", a}};
}

Transcript SessionManager::transcript(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  return s->t;
}

void install_routes(httplib::Server& server, SessionManager& sessions) {
  auto reply = [](httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };
  // Runs f, turning every failure into the structured error form.
  auto guarded = [reply](httplib::Response& res, const std::function<json()>& f, int ok_status = 200) {
    try {
      reply(res, ok_status, f());
    } catch (const ServiceError& e) {
      reply(res, e.status, error_json(e.code, e.what(), e.detail));
    } catch (const Error& e) {
      auto se = translate(e);
      reply(res, se.status, error_json(se.code, se.what(), se.detail));
    } catch (const std::exception& e) {
      reply(res, 500, error_json("internal", e.what()));
    }
  };
  auto body_of = [](const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    try {
      return json::parse(req.body);
    } catch (const json::parse_error& e) {
      throw ServiceError(400, "parse_error", e.what());
    }
  };

  server.Post("/sessions", [&, guarded, body_of](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return sessions.create(body_of(req)); }, 201);
  });
  server.Get(R"(/sessions/([A-Za-z0-9]+))", [&, guarded](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return sessions.get(req.matches[1]); });
  });
  server.Get(R"(/sessions/([A-Za-z0-9]+)/transcript)", [&, guarded](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return to_json(sessions.transcript(req.matches[1])); });
  });
  server.Post(R"(/sessions/([A-Za-z0-9]+)/moves)",
              [&, guarded, body_of](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] { return sessions.submit(req.matches[1], body_of(req)); });
              });
  server.Post(R"(/sessions/([A-Za-z0-9]+)/resign)", [&, guarded](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return sessions.resign(req.matches[1]); });
  });
  server.Get("/strategies", [&, guarded](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { return sessions.strategies(); });
  });
}

bool serve(const std::string& host, int port, SessionManager& sessions) {
  httplib::Server server;
  install_routes(server, sessions);
  return server.listen(host, port);
}

}  // namespace revspy
