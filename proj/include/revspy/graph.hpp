#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "revspy/error.hpp"

namespace revspy {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Rejects loops, duplicate edges (in either orientation) and out-of-range ids.
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges);

  std::size_t order() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  bool adjacent(Vertex u, Vertex v) const;
  bool closed_adjacent(Vertex u, Vertex v) const { return u == v || adjacent(u, v); }
  bool contains(Vertex v) const { return v < adj_.size(); }

  // Sorted (u<v) edge list.
  std::vector<Edge> edges() const;

  // Part labels of a complete multipartite spanning structure, if declared.
  bool has_parts() const { return !parts_.empty(); }
  const std::vector<int>& parts() const { return parts_; }
  int part_count() const;
  std::vector<std::vector<Vertex>> part_members() const;
  // Throws unless every cross-part pair is adjacent.
  Graph with_parts(std::vector<int> parts) const;

  std::optional<int> cube_dimension() const { return cube_dim_; }
  Graph with_cube_dimension(int d) const;

  // BFS distances from v; -1 for unreachable.
  std::vector<int> distances_from(Vertex v) const;
  std::vector<std::vector<int>> all_distances() const;
  bool connected() const;

  // Subgraph induced by vs, relabelled 0..|vs|-1 in the given order.
  Graph induced(const std::vector<Vertex>& vs) const;

  bool operator==(const Graph& o) const { return adj_ == o.adj_ && parts_ == o.parts_ && cube_dim_ == o.cube_dim_; }
  bool same_edges(const Graph& o) const { return adj_ == o.adj_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> matrix_;  // bit matrix for small graphs
  std::size_t edge_count_ = 0;
  std::vector<int> parts_;
  std::optional<int> cube_dim_;
};

std::string to_text(const Graph& g);
// Strict: header order n / parts / hypercube, edges u<v sorted and unique.
Graph from_text(const std::string& text);

struct RootedTree {
  Vertex root = 0;
  std::vector<int> parent;                  // -1 at the root
  std::vector<std::vector<Vertex>> children;  // ascending
  std::vector<int> depth;
  std::vector<Vertex> bfs_order;            // root first; parents before children

  static RootedTree from_parents(Vertex root, std::vector<int> parent);
  // Vertices of the subtree rooted at v (v included).
  std::vector<Vertex> descendants(Vertex v) const;
  bool is_spanning_tree_of(const Graph& g) const;
};

// ---- families ---------------------------------------------------------------

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t leaves);  // K_{1,leaves}, centre 0
Graph complete_graph(std::size_t n);
Graph complete_multipartite(const std::vector<std::size_t>& sizes);
Graph hypercube(int d);  // vertex id = bitmask
Graph random_gnp(std::size_t n, double p, std::uint64_t seed);
Graph random_tree(std::size_t n, std::uint64_t seed);

struct WebbedTree {
  Graph graph;
  RootedTree tree;
};
// Random tree plus sibling edges, each present with probability sibling_p.
WebbedTree random_webbed_tree(std::size_t n, std::uint64_t seed, double sibling_p = 0.5);

Graph cartesian_product(const Graph& a, const Graph& b);
Graph grid_graph(const std::vector<std::size_t>& dims);  // product of paths
Graph graph_power(const Graph& g, int k);

struct Expansion {
  Graph graph;
  std::vector<Vertex> to_original;  // new vertex -> vertex of g
  std::vector<Vertex> clique;       // the new clique
};
Expansion expand_vertex(const Graph& g, Vertex v, std::size_t size);

// Clique 0..r-1 plus one independent vertex per m-subset (lexicographic order).
struct SplitGraph {
  Graph graph;
  int m = 0, r = 0;
  std::vector<Vertex> clique;
  std::vector<std::vector<Vertex>> sets;  // sets[i] = clique vertices adjacent to vertex r+i
};
SplitGraph split_graph_construction(int m, int r, std::size_t size_cap = 100000);

// T = 0..t-1, R = t..t+r-1, then for each m-set A of R (lexicographic) and each
// j in T, the vertex u(A, j) adjacent to all of A and to j.
struct DomSharpGraph {
  Graph graph;
  int t = 0, m = 0, r = 0;
  std::vector<Vertex> T, R, U;
  std::vector<std::vector<Vertex>> sets;  // m-sets of R, indexed by set id
  std::vector<int> u_set;                 // per U-vertex (offset from U[0]): set id
  std::vector<Vertex> u_match;            // per U-vertex: matched T vertex
  Vertex u_of(int set_id, Vertex t_vertex) const;
};
DomSharpGraph domination_sharp_construction(int t, int m, int r, std::size_t size_cap = 100000);

// "family:params" e.g. cycle:4, star:3, hypercube:3, kpartite:4,4,4,
// random:40,0.5,7, tree:10,3, webbed:10,3, grid:3,3,3, split:2,4,
// domsharp:2,2,6, complete:5, path:5.
Graph parse_family(const std::string& spec);

// Binomial coefficient; saturates at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> k_subsets(int n, int k);

}  // namespace revspy
