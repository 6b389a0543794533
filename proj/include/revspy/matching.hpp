#pragma once

#include <optional>
#include <vector>

#include "revspy/graph.hpp"

namespace revspy {

// Left nodes 0..left-1, right nodes 0..right-1.
struct BipartiteInstance {
  int left = 0;
  int right = 0;
  std::vector<std::vector<int>> adj;  // left -> right neighbours

  static BipartiteInstance make(int left, int right) {
    return {left, right, std::vector<std::vector<int>>(left)};
  }
  void add(int l, int r) { adj[l].push_back(r); }
};

// match[l] = right partner or -1. Augmenting paths, deterministic scan order.
std::vector<int> max_matching(const BipartiteInstance& inst);
int matching_size(const std::vector<int>& match);

// Left set S with |N(S)| < |S|, or nullopt when the left side is saturable.
std::optional<std::vector<int>> hall_violator(const BipartiteInstance& inst);
std::vector<int> neighbourhood(const BipartiteInstance& inst, const std::vector<int>& left_set);

struct CoverAssignment {
  std::vector<Vertex> meetings;   // sorted
  std::vector<int> spy_of;        // spy_of[i] covers meetings[i]
  std::vector<int> movers;        // spy ids that change vertex, ascending
};

// Covers every meeting vertex with a distinct spy at distance <= 1, moving the
// fewest spies (exact: min-cost matching with cost 0 for staying).
// Throws NoCover with a Hall violator in the message when impossible.
CoverAssignment min_movers_cover(const std::vector<Vertex>& meetings,
                                 const std::vector<Vertex>& spies, const Graph& g);

// True when every meeting can be covered by a distinct spy at distance <= 1.
bool coverable(const std::vector<Vertex>& meetings, const std::vector<Vertex>& spies, const Graph& g);

}  // namespace revspy
