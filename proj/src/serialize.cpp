#include "revspy/serialize.hpp"

namespace revspy {

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

Phase phase_from_name(const std::string& s) {
  for (Phase p : {Phase::RevPlacement, Phase::SpyPlacement, Phase::RevToMove, Phase::SpyToMove, Phase::Finished})
    if (s == phase_name(p)) return p;
  fail(ErrorCode::ParseError, "unknown phase '" + s + "'");
}

json positions_core(const Position& p) { return {{"revs", p.revs}, {"spies", p.spies}, {"round", p.round}}; }

}  // namespace

json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  json j{{"n", g.order()}, {"edges", edges}};
  j["parts"] = g.has_parts() ? json(g.parts()) : json(nullptr);
  j["cube_dim"] = g.cube_dimension() ? json(*g.cube_dimension()) : json(nullptr);
  return j;
}

Graph graph_from_json(const json& j) {
  auto n = field<std::size_t>(j, "n");
  auto edges = field<std::vector<std::pair<Vertex, Vertex>>>(j, "edges");
  Graph g;
  try {
    g = Graph::from_edges(n, edges);
    if (j.contains("parts") && !j["parts"].is_null()) g = g.with_parts(j["parts"].get<std::vector<int>>());
    if (j.contains("cube_dim") && !j["cube_dim"].is_null()) g = g.with_cube_dimension(j["cube_dim"].get<int>());
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, std::string("graph: ") + e.what());
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("graph: ") + e.what());
  }
  return g;
}

json to_json(const GameSpec& spec) {
  return {{"graph", to_json(spec.g())}, {"m", spec.m}, {"r", spec.r}, {"s", spec.s}, {"initial_check", spec.initial_check}};
}

GameSpec spec_from_json(const json& j) {
  GameSpec spec(graph_from_json(field<json>(j, "graph")), field<int>(j, "m"), field<int>(j, "r"), field<int>(j, "s"));
  if (j.contains("initial_check")) spec.initial_check = field<bool>(j, "initial_check");
  return spec;
}

json to_json(const Position& pos) {
  return {{"revs", pos.revs}, {"spies", pos.spies}, {"phase", phase_name(pos.phase)}, {"round", pos.round}};
}

Position position_from_json(const json& j) {
  Position p;
  p.revs = field<std::vector<int>>(j, "revs");
  p.spies = field<std::vector<int>>(j, "spies");
  p.phase = phase_from_name(field<std::string>(j, "phase"));
  p.round = field<int>(j, "round");
  if (p.revs.size() != p.spies.size()) fail(ErrorCode::ParseError, "revs and spies differ in length");
  return p;
}

json to_json(const MoveSet& move) {
  json a = json::array();
  for (const auto& f : move.flows) a.push_back({{"from", f.from}, {"to", f.to}, {"count", f.count}});
  return a;
}

MoveSet moveset_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "a move is a list of {from, to, count}");
  MoveSet m;
  for (const auto& e : j) {
    auto count = e.contains("count") ? field<long long>(e, "count") : 1;
    auto from = field<long long>(e, "from"), to = field<long long>(e, "to");
    if (from < 0 || to < 0 || from > UINT32_MAX || to > UINT32_MAX)
      fail(ErrorCode::ParseError, "vertex id out of range");
    if (count < INT32_MIN || count > INT32_MAX) fail(ErrorCode::ParseError, "count out of range");
    // Stays are kept so that legality checks see every submitted entry.
    m.flows.push_back({static_cast<Vertex>(from), static_cast<Vertex>(to), static_cast<int>(count)});
  }
  return m;
}

json placement_to_json(const std::vector<int>& counts) {
  json a = json::array();
  for (std::size_t v = 0; v < counts.size(); ++v)
    if (counts[v] > 0) a.push_back({{"from", nullptr}, {"to", v}, {"count", counts[v]}});
  return a;
}

std::vector<int> placement_from_json(const json& j, std::size_t n) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "a placement is a list of {from: null, to, count}");
  if (!j.empty() && j.front().is_number()) {
    auto counts = j.get<std::vector<int>>();
    if (counts.size() != n) fail(ErrorCode::ParseError, "placement count vector has the wrong length");
    return counts;
  }
  std::vector<int> counts(n, 0);
  for (const auto& e : j) {
    if (e.contains("from") && !e["from"].is_null()) fail(ErrorCode::ParseError, "placement entries have from = null");
    auto to = field<long long>(e, "to");
    auto count = e.contains("count") ? field<long long>(e, "count") : 1;
    if (to < 0 || static_cast<std::size_t>(to) >= n) fail(ErrorCode::ParseError, "placement vertex out of range");
    if (count < 0 || count > INT32_MAX) fail(ErrorCode::ParseError, "placement count out of range");
    counts[to] += static_cast<int>(count);
  }
  return counts;
}

const char* winner_name(Winner w) {
  switch (w) {
    case Winner::Revolutionaries: return "revolutionaries";
    case Winner::Spies: return "spies";
    case Winner::Fault: return "fault";
  }
  return "?";
}

const char* result_name(Winner w) {
  switch (w) {
    case Winner::Revolutionaries: return "RevolutionariesWin";
    case Winner::Spies: return "SpiesSurvive";
    case Winner::Fault: return "Fault";
  }
  return "?";
}

json to_json(const Outcome& o) {
  json j{{"winner", winner_name(o.winner)}, {"result", result_name(o.winner)}, {"round", o.round}, {"horizon", o.horizon}};
  j["vertex"] = o.vertex ? json(*o.vertex) : json(nullptr);
  if (o.winner == Winner::Fault)
    j["fault"] = {{"side", o.fault_side}, {"code", o.fault_code}, {"message", o.fault_message}};
  return j;
}

json to_json(const AuditNote& a) {
  return {{"key", a.key}, {"ok", a.ok}, {"value", a.value}, {"detail", a.detail}};
}

json to_json(const Transcript& t) {
  json j = transcript_core(t);
  j["schema_version"] = kSchemaVersion;
  j["spec"] = to_json(t.spec);
  j["rev_strategy"] = t.rev_strategy;
  j["spy_strategy"] = t.spy_strategy;
  j["seed"] = t.seed;
  json pa = json::array();
  for (const auto& a : t.placement_audits) pa.push_back(to_json(a));
  j["placement_audits"] = pa;
  for (std::size_t i = 0; i < t.rounds.size(); ++i) {
    json ra = json::array();
    for (const auto& a : t.rounds[i].audits) ra.push_back(to_json(a));
    j["rounds"][i]["audits"] = ra;
  }
  auto failed = t.failed_audits();
  j["audit_summary"] = {{"checked", t.audit_count()}, {"failed", failed.size()}};
  return j;
}

json transcript_core(const Transcript& t) {
  json rounds = json::array();
  for (const auto& r : t.rounds)
    rounds.push_back({{"round", r.round},
                      {"rev_move", to_json(r.rev_move.normalized())},
                      {"spy_move", to_json(r.spy_move.normalized())},
                      {"position", positions_core(r.position)}});
  return {{"rev_placement", placement_to_json(t.rev_placement)},
          {"spy_placement", placement_to_json(t.spy_placement)},
          {"placed", positions_core(t.placed)},
          {"rounds", rounds},
          {"outcome", to_json(t.outcome)}};
}

json to_json(const SolveStats& st) {
  return {{"rev_distributions", st.rev_distributions},
          {"spy_distributions", st.spy_distributions},
          {"states", st.states},
          {"rev_winning_states", st.rev_winning_states},
          {"seconds", st.seconds}};
}

json error_json(const std::string& code, const std::string& message, const json& detail) {
  return {{"schema_version", kSchemaVersion}, {"code", code}, {"message", message}, {"detail", detail}};
}

}  // namespace revspy
