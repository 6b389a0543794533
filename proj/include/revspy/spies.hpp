#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "revspy/game.hpp"

namespace revspy {

// One revolutionary flow inside a local game, as indices into the local vertex list.
struct LocalFlow {
  int from;
  int to;
  int count;
};

// Spy response in a local game whose vertex list starts with a vertex that
// dominates the others (edges are read from g). `before` and `spies` must form
// a stable position: spies[i] == before[i] / m for i > 0, the rest on verts[0].
// Returns global spy flows re-establishing stability for the post-move counts.
MoveSet dominating_response(const Graph& g, const std::vector<Vertex>& verts, const std::vector<int>& before,
                            const std::vector<LocalFlow>& flows, const std::vector<int>& spies, int m);

// Stable counts for a local game: floor(r/m) per non-dominating vertex, the rest on verts[0].
std::vector<int> stable_local_spies(const std::vector<int>& revs, int total_spies, int m);

// Eq.-(1)-style webbed-tree targets: floor(w(v)/m) - sum over children floor(w(x)/m).
std::vector<int> webbed_targets(const RootedTree& tree, const std::vector<int>& revs, int m);

// Greedy migration between the two parts of a complete bipartite graph: at most one
// spy per vertex, exact per-part targets, each spy moving at most once.
MoveSet greedy_migration(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies, int s1_target,
                         int s2_target);

struct BipartiteParams {
  int m = 0, r = 0, s = 0;
  int alpha = 0, beta = 0;  // m = 2 and m = 3
  bool exception_branch = false;  // m = 3, r = 3 mod 18
  bool small_ratio = false;       // general m with r/m below 1/(1-1/sqrt 3)
};
// Constants for the given spy count (default: the strategy's own count).
BipartiteParams bipartite_params(int m, int r, int s = -1);
int bipartite_spy_count(int m, int r);

struct GeneralAlpha {
  double x = 0, u1 = 0, u2 = 0, alpha = 0;
  double spread = 0;  // max disagreement between the defined alpha expressions
  int defined = 0;    // how many of the four expressions had a nonzero denominator
};
GeneralAlpha general_alpha(int m, int r, int r1_after);
// Target for part 0 under the general-m case rule.
int general_target(int m, int r, int s, int r1_after, GeneralAlpha* out = nullptr);

// ---- strategies -------------------------------------------------------------------

std::unique_ptr<SpyStrategy> make_trivial_follower_spy(const GameSpec& spec);
std::unique_ptr<SpyStrategy> make_random_spy(const GameSpec& spec);
// Phase-1 cover only; free spies sit on the fullest uncovered vertices they can reach.
std::unique_ptr<SpyStrategy> make_cover_spy(const GameSpec& spec);

std::unique_ptr<SpyStrategy> make_dominating_vertex_spy(const GameSpec& spec, std::optional<Vertex> u = std::nullopt);
std::unique_ptr<SpyStrategy> make_webbed_tree_spy(const GameSpec& spec, std::optional<RootedTree> tree = std::nullopt);
std::unique_ptr<SpyStrategy> make_domination_set_spy(const GameSpec& spec,
                                                     std::optional<std::vector<Vertex>> dom_set = std::nullopt);

struct QCommonConfig {
  double q = 0;          // 0: use the graph's exact common-neighbourhood ratio
  double epsilon = 1.0;
  int retries = 50;
};
// Spy counts demanded by the q-common theorem: both lower bounds, rounded up.
int qcommon_spy_count(std::size_t n, double q, int m, int r, double epsilon);
std::unique_ptr<SpyStrategy> make_qcommon_spy(const GameSpec& spec, QCommonConfig cfg = {});

int kpartite_spy_count(int k, int m, int r);
std::unique_ptr<SpyStrategy> make_kpartite_spy(const GameSpec& spec);

std::unique_ptr<SpyStrategy> make_bipartite_spy_m2(const GameSpec& spec);
std::unique_ptr<SpyStrategy> make_bipartite_spy_m3(const GameSpec& spec);
std::unique_ptr<SpyStrategy> make_bipartite_spy_general(const GameSpec& spec);

// Stability predicates (free/bound bookkeeping: one bound spy and m bound
// revolutionaries per meeting vertex).
struct FreeBound {
  int free_revs = 0;
  int free_spies = 0;
  std::vector<int> free_spies_at;  // per vertex
  int meetings = 0;
};
FreeBound free_bound(const std::vector<int>& revs, const std::vector<int>& spies, int m);
// min over v of free spies in N[v], minus free_revs/m.
double neighbourhood_slack(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies, int m);
// min over parts i of (free spies outside part i) - free_revs/m.
double multipartite_slack(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies, int m);

}  // namespace revspy
