#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "revspy/game.hpp"

namespace revspy {

// All distributions of k identical pieces on n vertices, ranked in colex order
// of the sorted piece list.
class DistributionSpace {
 public:
  DistributionSpace(const Graph& g, int pieces);
  std::uint64_t size() const { return size_; }
  int pieces() const { return k_; }
  std::uint64_t rank(const std::vector<int>& counts) const;
  std::vector<int> unrank(std::uint64_t idx) const;
  // Distinct distributions reachable in one simultaneous move (includes itself).
  std::vector<std::uint64_t> successors(const std::vector<int>& counts) const;
  static std::uint64_t count(std::size_t n, int k);

 private:
  const Graph* g_;
  std::size_t n_;
  int k_;
  std::uint64_t size_;
};

std::uint64_t state_cap_from_env(std::uint64_t fallback = 50'000'000);

struct SolveStats {
  std::uint64_t rev_distributions = 0;
  std::uint64_t spy_distributions = 0;
  std::uint64_t states = 0;
  std::uint64_t rev_winning_states = 0;
  double seconds = 0.0;
};

class SolveResult {
 public:
  Winner winner = Winner::Spies;
  SolveStats stats;

  // Rev-to-move position (no unguarded meeting) won by the revolutionaries?
  bool rev_wins_at(const std::vector<int>& revs, const std::vector<int>& spies) const;
  // Spy-to-move position won by the revolutionaries?
  bool rev_wins_after_rev_move(const std::vector<int>& revs, const std::vector<int>& spies) const;
  // One winning move for the side that wins the given position, as target counts.
  std::optional<std::vector<int>> winning_rev_target(const std::vector<int>& revs, const std::vector<int>& spies) const;
  std::optional<std::vector<int>> safe_spy_target(const std::vector<int>& revs, const std::vector<int>& spies) const;
  std::optional<std::vector<int>> winning_rev_placement() const;
  std::optional<std::vector<int>> safe_spy_placement(const std::vector<int>& revs) const;

  std::shared_ptr<const Graph> graph;
  int m = 0;
  std::unique_ptr<DistributionSpace> rev_space, spy_space;
  std::vector<std::uint64_t> rev_win;    // bitset over R-states
  std::vector<std::uint64_t> after_win;  // bitset over I-states
  std::vector<std::uint16_t> after_depth;  // won I-states: rounds the spies can still hold out
  std::vector<std::uint64_t> meeting_mask, spy_mask;
  std::uint64_t index(std::uint64_t a, std::uint64_t b) const { return a * stats.spy_distributions + b; }
  static bool test(const std::vector<std::uint64_t>& bits, std::uint64_t i) { return (bits[i >> 6] >> (i & 63)) & 1; }
};

// Exact winner of RS(G,m,r,s). Graphs up to 64 vertices; state cap from
// REVSPY_STATE_CAP (default 5e7) unless given.
SolveResult solve(const GameSpec& spec, std::uint64_t state_cap = 0);
Winner winner(const GameSpec& spec, std::uint64_t state_cap = 0);
// Least s in [floor(r/m), r-m+1] for which the spies win (binary search).
int sigma_exact(const Graph& g, int m, int r, std::uint64_t state_cap = 0);
int sigma_exact_linear(const Graph& g, int m, int r, std::uint64_t state_cap = 0);

// Exact ∃∀ search: can the revolutionaries (to move at pos) force an unguarded
// meeting within `rounds` rounds? Win checks follow every spy phase.
bool rev_can_win_within(const Position& pos, const GameSpec& spec, int rounds, std::uint64_t node_cap = 200'000'000);
// Same, returning a first winning rev move (target counts) when one exists.
std::optional<std::vector<int>> forced_win_move(const Position& pos, const GameSpec& spec, int rounds,
                                                std::uint64_t node_cap = 200'000'000);

// Flow taking counts `from` to `to` with every piece moving within N[v].
std::optional<MoveSet> flow_between(const Graph& g, const std::vector<int>& from, const std::vector<int>& to);

// Fixed revolutionary strategy against every spy placement and every spy reply.
struct AdversaryReport {
  bool rev_always_wins = true;
  std::uint64_t placements = 0;
  std::uint64_t lines = 0;  // leaves examined
  // A surviving line when rev_always_wins is false.
  std::vector<int> counter_placement;
  std::vector<std::vector<int>> counter_replies;
};
AdversaryReport exhaustive_spy_adversary(const GameSpec& spec, const RevStrategy& rev, int rounds,
                                         const std::vector<std::vector<int>>* placements = nullptr,
                                         std::uint64_t node_cap = 500'000'000);

// Spy strategy backed by a full solve (tiny graphs).
std::unique_ptr<SpyStrategy> make_solver_spy(const GameSpec& spec);
std::unique_ptr<RevStrategy> make_solver_rev(const GameSpec& spec);

}  // namespace revspy
