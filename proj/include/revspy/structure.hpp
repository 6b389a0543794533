#pragma once

#include <optional>
#include <vector>

#include "revspy/graph.hpp"

namespace revspy {

std::optional<Vertex> dominating_vertex(const Graph& g);

struct DominatingSet {
  int size = 0;
  std::vector<Vertex> members;  // lexicographically first minimum set
};
// Exact minimum dominating set by increasing-size enumeration.
DominatingSet minimum_dominating_set(const Graph& g, std::size_t vertex_cap = 24);
int domination_number(const Graph& g, std::size_t vertex_cap = 24);

// A rooted spanning tree whose non-tree edges all join siblings. Tries roots in
// increasing order. Given a root, such a tree is forced: depths are BFS
// distances, each non-root vertex has exactly one neighbour one layer up, and
// same-layer edges must share that neighbour.
std::optional<RootedTree> recognize_webbed_tree(const Graph& g);
// Brute force over all parent functions; small graphs only (test oracle).
std::optional<RootedTree> recognize_webbed_tree_exhaustive(const Graph& g);

// min over ordered pairs (v,w) of |N(v) ∩ N(w)| / |N(v)|. Throws on isolated vertices.
double common_neighbourhood_ratio(const Graph& g);
bool is_q_common(const Graph& g, double q);

// Every disjoint T,U with |T|+|U| <= r has some x outside T ∪ U adjacent to all
// of T and none of U. Exhaustive; cap on the number of (T,U) pairs examined.
bool has_r_extension_property(const Graph& g, int r, std::uint64_t pair_cap = 50'000'000);

struct CodeSet {
  int dimension = 0;
  int min_distance = 0;
  std::vector<std::uint64_t> members;
};
CodeSet greedy_code(int d, int k, int dim_cap = 20);
// Σ_{i<k} C(d,i): size of a Hamming ball of radius k-1.
std::uint64_t ball_size(int d, int k);

struct RetractionMap {
  Graph host;
  std::vector<Vertex> image;  // sorted
  std::vector<Vertex> map;    // host vertex -> image vertex (a host id)
};
// Both clauses: fixes the image; every host edge maps to an edge or a point.
bool is_retraction(const RetractionMap& f);

// Projection of Q_d onto the subcube of masks supported on coords (0-based bits).
RetractionMap subcube_retraction(int d, const std::vector<int>& coords);

struct ProductRetraction {
  RetractionMap map;
  // image[mask] = host vertex whose factor-i coordinate is the larger endpoint of
  // edge i iff bit i of mask is set; also sorted, so image order = mask order.
  Graph cube;  // Q_d, isomorphic to the induced image
};
ProductRetraction product_retraction(const std::vector<std::pair<Graph, Edge>>& factors);

}  // namespace revspy
