#pragma once

#include <vector>

#include "revspy/game.hpp"

namespace revspy {

// True when the graph declares parts and every cross-part pair is adjacent.
bool is_complete_multipartite(const Graph& g);
// Every part has at least 2r vertices.
bool is_r_large(const Graph& g, int r);
void require_multipartite(const Graph& g, int r, bool need_r_large = true);

struct PartCounts {
  std::vector<int> revs;     // r_j
  std::vector<int> spies;    // s_j
  std::vector<int> covered;  // c_j: revolutionaries on spy-occupied vertices of part j
  std::vector<int> max_uncovered;  // u_j: most revolutionaries on a spy-free vertex of part j
};
PartCounts part_counts(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies);

struct SwarmPlan {
  MoveSet move;
  int new_meetings = 0;     // unguarded meetings in the part after the move (spies unchanged)
  int outside_spies = 0;    // spies able to reach those meetings
  bool wins() const { return new_meetings > outside_spies; }
  int margin() const { return new_meetings - outside_spies; }
};

// All revolutionaries outside `part` (minus `pinned`, which never move) move in:
// top up uncovered partial meetings (fullest first), then open fresh meetings
// on empty spy-free vertices; ties go to the lowest index.
SwarmPlan swarm_plan(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies, int part, int m,
                     const std::vector<int>* pinned = nullptr);
MoveSet swarm_move(const GameSpec& spec, const Position& pos, int part);

// Most new unguarded meetings any assignment of the outsiders can create (exhaustive; tiny instances).
int swarm_optimum_bruteforce(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies, int part, int m);

}  // namespace revspy
