#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "revspy/game.hpp"
#include "revspy/solver.hpp"

namespace revspy {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "revspy/1";

json to_json(const Graph& g);
Graph graph_from_json(const json& j);

json to_json(const GameSpec& spec);
GameSpec spec_from_json(const json& j);

json to_json(const Position& pos);
Position position_from_json(const json& j);

// Wire form: [{from, to, count}, ...].
json to_json(const MoveSet& move);
MoveSet moveset_from_json(const json& j);

// Placements travel as [{from: null, to, count}, ...]; a plain array of
// per-vertex counts is accepted too.
json placement_to_json(const std::vector<int>& counts);
std::vector<int> placement_from_json(const json& j, std::size_t n);

const char* winner_name(Winner w);
// "RevolutionariesWin" / "SpiesSurvive" / "Fault".
const char* result_name(Winner w);
json to_json(const Outcome& o);
json to_json(const AuditNote& a);
json to_json(const Transcript& t);
// Placements, moves, positions and outcome only: what two runs of the same game must share.
json transcript_core(const Transcript& t);

json to_json(const SolveStats& st);

json error_json(const std::string& code, const std::string& message, const json& detail = nullptr);

}  // namespace revspy
