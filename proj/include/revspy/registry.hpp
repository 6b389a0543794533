#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "revspy/game.hpp"

namespace revspy {

struct StrategyEntry {
  std::string id;
  Side side;
  std::string summary;
};

std::vector<StrategyEntry> list_strategies();
// Throw NotFound for unknown ids and StrategyMismatch when the game does not fit.
std::unique_ptr<RevStrategy> make_rev(const std::string& id, const GameSpec& spec);
std::unique_ptr<SpyStrategy> make_spy(const std::string& id, const GameSpec& spec);

// Spy count a spy strategy is built for on this graph (nullopt when not applicable).
std::optional<int> strategy_spy_count(const std::string& id, const GameSpec& spec);
// Rounds within which an attack is meant to win (0 when it has no fixed horizon).
int attack_horizon(const std::string& id, const GameSpec& spec);

}  // namespace revspy
