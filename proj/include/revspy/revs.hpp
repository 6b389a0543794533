#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "revspy/avoiding.hpp"
#include "revspy/game.hpp"
#include "revspy/structure.hpp"

namespace revspy {

using RevFactory = std::function<std::unique_ptr<RevStrategy>(const GameSpec&)>;

// ---- generic ---------------------------------------------------------------------------------

std::unique_ptr<RevStrategy> make_random_rev(const GameSpec& spec);
// Balanced distinct placement over the parts; every round the swarm with the best margin.
std::unique_ptr<RevStrategy> make_best_swarm_rev(const GameSpec& spec);
// Balanced distinct placement; round i swarms part (i-1) mod k.
std::unique_ptr<RevStrategy> make_alternating_swarm_rev(const GameSpec& spec);

// Plays `inner` on cells of `factor` co-located revolutionaries: the inner game has
// floor(r/factor) players and meeting size inner_m; leftover revolutionaries idle.
std::unique_ptr<RevStrategy> make_grouped_rev(const GameSpec& spec, int factor, int inner_m, const RevFactory& inner);

// ---- complete multipartite -------------------------------------------------------------------

std::unique_ptr<RevStrategy> make_bipartite_attack_m2(const GameSpec& spec);
std::unique_ptr<RevStrategy> make_bipartite_attack_m3(const GameSpec& spec);
// base 3: cells of ceil(m/3) running the m=3 attack; base 2 (m even): cells of m/2 running the m=2 attack.
std::unique_ptr<RevStrategy> make_cell_grouping_attack(const GameSpec& spec, int base);
std::unique_ptr<RevStrategy> make_kpartite_lower_attack(const GameSpec& spec);

// Spy counts the attacks beat (they win against any s <= the returned value).
int bipartite_m2_beaten(int r);      // ceil((floor(7r/2)-3)/5) - 1
int bipartite_m3_beaten(int r);      // floor(r/2) - 1
int kpartite_lower_beaten(int k, int m, int r);  // ceil(k(r-m+1)/(m(k-1)+1)) - 1, with r -> k floor(r/k)

// ---- hypercubes ------------------------------------------------------------------------------

// Q_d with d >= r: revolutionaries at the weight-1 vertices; exact two-round search on
// small cubes, the scripted line (pair threats, the three-uncovered line) on larger ones.
std::unique_ptr<RevStrategy> make_hypercube_attack_m2(const GameSpec& spec);
// floor(r/d) groups of d revolutionaries around the centers of a distance-9 code.
std::unique_ptr<RevStrategy> make_replicated_hypercube_attack(const GameSpec& spec);
// Avoiding-vertex walk: m revolutionaries meet at round m-1 at a weight-m vertex.
std::unique_ptr<RevStrategy> make_hypercube_attack_general(const GameSpec& spec);

// Group centers used by the replicated attack.
std::vector<Vertex> replicated_centers(int d, int groups);

// ---- constructions ---------------------------------------------------------------------------

std::unique_ptr<RevStrategy> make_split_attack(const GameSpec& spec, const SplitGraph& sg);
std::unique_ptr<RevStrategy> make_domsharp_attack(const GameSpec& spec, const DomSharpGraph& dg);
std::unique_ptr<RevStrategy> make_extension_attack(const GameSpec& spec);

// Plays `inner` (built for the image graph) on the image of a retraction. The image
// graph defaults to host.induced(image); vertex k of it is image[k].
std::unique_ptr<RevStrategy> make_retract_pullback(const GameSpec& spec, const RetractionMap& f, const RevFactory& inner,
                                                   std::optional<Graph> image_graph = std::nullopt);

// ---- wide hypercubes (dimension beyond what a Graph can hold) --------------------------------

struct WideCubeRun {
  int d = 0, m = 0, r = 0, s = 0;
  int uncovered = 0;           // t
  int projected_spies = 0;     // spies with at least two coordinates among the uncovered indices
  bool found = false;          // avoiding vertex found
  AvoidingSearchStats search;
  int min_start_distance = 0;  // min Hamming distance spy -> w when the walk starts
  int rounds = 0;
  bool revs_win = false;
  std::string detail;
};
// Revolutionaries at e_0..e_{r-1}; spies cover a prefix of them and sit on random
// low-weight vertices, then chase w greedily. Plays the general attack on CubeMask.
WideCubeRun run_wide_cube_attack(int d, int m, int r, int s, std::uint64_t seed);

}  // namespace revspy
