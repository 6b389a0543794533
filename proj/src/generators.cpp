#include <algorithm>
#include <numeric>
#include <sstream>

#include "revspy/graph.hpp"
#include "revspy/rng.hpp"

namespace revspy {

namespace {
void require_nonempty(std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "graph size must be positive");
}
}  // namespace

Graph path_graph(std::size_t n) {
  require_nonempty(n);
  std::vector<Edge> es;
  for (Vertex i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph::from_edges(n, es);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) fail(ErrorCode::InvalidArgument, "cycle needs at least 3 vertices");
  std::vector<Edge> es;
  for (Vertex i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  es.emplace_back(0, static_cast<Vertex>(n - 1));
  return Graph::from_edges(n, es);
}

Graph star_graph(std::size_t leaves) {
  require_nonempty(leaves);
  std::vector<Edge> es;
  for (Vertex i = 1; i <= leaves; ++i) es.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, es);
}

Graph complete_graph(std::size_t n) {
  require_nonempty(n);
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) es.emplace_back(u, v);
  return Graph::from_edges(n, es);
}

Graph complete_multipartite(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) fail(ErrorCode::InvalidArgument, "need at least one part");
  std::vector<int> parts;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    require_nonempty(sizes[i]);
    parts.insert(parts.end(), sizes[i], static_cast<int>(i));
  }
  std::vector<Edge> es;
  for (Vertex u = 0; u < parts.size(); ++u)
    for (Vertex v = u + 1; v < parts.size(); ++v)
      if (parts[u] != parts[v]) es.emplace_back(u, v);
  return Graph::from_edges(parts.size(), es).with_parts(parts);
}

Graph hypercube(int d) {
  if (d < 0 || d > 20) fail(ErrorCode::CapExceeded, "hypercube dimension must be in [0,20]");
  std::size_t n = std::size_t{1} << d;
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (int i = 0; i < d; ++i) {
      Vertex v = u ^ (1u << i);
      if (u < v) es.emplace_back(u, v);
    }
  std::sort(es.begin(), es.end());
  return Graph::from_edges(n, es).with_cube_dimension(d);
}

Graph random_gnp(std::size_t n, double p, std::uint64_t seed) {
  require_nonempty(n);
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::InvalidArgument, "edge probability outside [0,1]");
  Rng rng(seed);
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.uniform() < p) es.emplace_back(u, v);
  return Graph::from_edges(n, es);
}

Graph random_tree(std::size_t n, std::uint64_t seed) {
  require_nonempty(n);
  if (n == 1) return Graph::from_edges(1, {});
  if (n == 2) return Graph::from_edges(2, {{0, 1}});
  Rng rng(seed);
  // Prüfer decoding.
  std::vector<Vertex> code(n - 2);
  for (auto& c : code) c = static_cast<Vertex>(rng.below(n));
  std::vector<int> deg(n, 1);
  for (Vertex c : code) ++deg[c];
  std::vector<Edge> es;
  for (Vertex c : code) {
    Vertex leaf = 0;
    while (deg[leaf] != 1) ++leaf;
    es.emplace_back(std::min(leaf, c), std::max(leaf, c));
    --deg[leaf];
    --deg[c];
  }
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v)
    if (deg[v] == 1) rest.push_back(v);
  es.emplace_back(rest[0], rest[1]);
  std::sort(es.begin(), es.end());
  return Graph::from_edges(n, es);
}

WebbedTree random_webbed_tree(std::size_t n, std::uint64_t seed, double sibling_p) {
  require_nonempty(n);
  Rng rng(seed);
  // Random recursive tree on a shuffled labelling.
  std::vector<Vertex> label(n);
  std::iota(label.begin(), label.end(), 0);
  rng.shuffle(label);
  std::vector<int> parent(n, -1);
  for (std::size_t i = 1; i < n; ++i) parent[label[i]] = static_cast<int>(label[rng.below(i)]);
  RootedTree tree = RootedTree::from_parents(label[0], parent);
  std::vector<Edge> es;
  for (Vertex v = 0; v < n; ++v)
    if (parent[v] >= 0) es.emplace_back(std::min<Vertex>(v, parent[v]), std::max<Vertex>(v, parent[v]));
  for (Vertex v = 0; v < n; ++v) {
    const auto& ch = tree.children[v];
    for (std::size_t a = 0; a < ch.size(); ++a)
      for (std::size_t b = a + 1; b < ch.size(); ++b)
        if (rng.uniform() < sibling_p) es.emplace_back(ch[a], ch[b]);
  }
  std::sort(es.begin(), es.end());
  return {Graph::from_edges(n, es), tree};
}

Graph cartesian_product(const Graph& a, const Graph& b) {
  const std::size_t na = a.order(), nb = b.order();
  auto id = [na](Vertex x, Vertex y) { return static_cast<Vertex>(x + y * na); };
  std::vector<Edge> es;
  for (Vertex y = 0; y < nb; ++y)
    for (auto [u, v] : a.edges()) es.emplace_back(id(u, y), id(v, y));
  for (Vertex x = 0; x < na; ++x)
    for (auto [u, v] : b.edges()) es.emplace_back(id(x, u), id(x, v));
  return Graph::from_edges(na * nb, es);
}

Graph grid_graph(const std::vector<std::size_t>& dims) {
  if (dims.empty()) fail(ErrorCode::InvalidArgument, "grid needs at least one dimension");
  Graph g = path_graph(dims[0]);
  for (std::size_t i = 1; i < dims.size(); ++i) g = cartesian_product(g, path_graph(dims[i]));
  return g;
}

Graph graph_power(const Graph& g, int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "power must be at least 1");
  std::vector<Edge> es;
  for (Vertex u = 0; u < g.order(); ++u) {
    auto d = g.distances_from(u);
    for (Vertex v = u + 1; v < g.order(); ++v)
      if (d[v] >= 1 && d[v] <= k) es.emplace_back(u, v);
  }
  Graph out = Graph::from_edges(g.order(), es);
  if (k == 1) out = g;  // keep headers (parts, dimension) for the identity case
  return out;
}

Expansion expand_vertex(const Graph& g, Vertex v, std::size_t size) {
  if (v >= g.order()) fail(ErrorCode::InvalidArgument, "vertex out of range");
  if (size < 1) fail(ErrorCode::InvalidArgument, "clique size must be at least 1");
  // Old vertices keep their ids; the extra clique vertices are appended.
  const std::size_t n = g.order() + size - 1;
  Expansion ex;
  ex.to_original.resize(n);
  for (Vertex u = 0; u < g.order(); ++u) ex.to_original[u] = u;
  ex.clique.push_back(v);
  for (std::size_t i = g.order(); i < n; ++i) {
    ex.to_original[i] = v;
    ex.clique.push_back(static_cast<Vertex>(i));
  }
  std::vector<Edge> es = g.edges();
  for (std::size_t i = 1; i < ex.clique.size(); ++i) {
    Vertex c = ex.clique[i];
    for (Vertex w : g.neighbors(v)) es.emplace_back(std::min(c, w), std::max(c, w));
  }
  for (std::size_t i = 0; i < ex.clique.size(); ++i)
    for (std::size_t j = i + 1; j < ex.clique.size(); ++j)
      es.emplace_back(std::min(ex.clique[i], ex.clique[j]), std::max(ex.clique[i], ex.clique[j]));
  ex.graph = Graph::from_edges(n, es);
  return ex;
}

SplitGraph split_graph_construction(int m, int r, std::size_t size_cap) {
  if (!(r >= m && m >= 1)) fail(ErrorCode::InvalidArgument, "need r >= m >= 1");
  std::uint64_t count = binomial(r, m);
  if (count > size_cap) fail(ErrorCode::CapExceeded, "split graph too large");
  SplitGraph sg;
  sg.m = m;
  sg.r = r;
  std::vector<Edge> es;
  for (Vertex u = 0; u < static_cast<Vertex>(r); ++u) {
    sg.clique.push_back(u);
    for (Vertex v = u + 1; v < static_cast<Vertex>(r); ++v) es.emplace_back(u, v);
  }
  Vertex next = r;
  for (const auto& subset : k_subsets(r, m)) {
    std::vector<Vertex> set(subset.begin(), subset.end());
    for (Vertex u : set) es.emplace_back(u, next);
    sg.sets.push_back(set);
    ++next;
  }
  std::sort(es.begin(), es.end());
  sg.graph = Graph::from_edges(next, es);
  return sg;
}

Vertex DomSharpGraph::u_of(int set_id, Vertex t_vertex) const {
  return U[static_cast<std::size_t>(set_id) * t + t_vertex];
}

DomSharpGraph domination_sharp_construction(int t, int m, int r, std::size_t size_cap) {
  if (!(t >= 1 && t <= m && m <= r - m)) fail(ErrorCode::InvalidArgument, "need 1 <= t <= m <= r-m");
  std::uint64_t sets = binomial(r, m);
  if (sets > size_cap || sets * t > size_cap) fail(ErrorCode::CapExceeded, "construction too large");
  DomSharpGraph d;
  d.t = t;
  d.m = m;
  d.r = r;
  std::vector<Edge> es;
  for (Vertex i = 0; i < static_cast<Vertex>(t); ++i) d.T.push_back(i);
  for (Vertex i = 0; i < static_cast<Vertex>(r); ++i) d.R.push_back(t + i);
  for (Vertex a : d.T)
    for (Vertex b : d.R) es.emplace_back(a, b);
  Vertex next = t + r;
  int sid = 0;
  for (const auto& subset : k_subsets(r, m)) {
    std::vector<Vertex> set;
    for (int i : subset) set.push_back(d.R[i]);
    for (Vertex j : d.T) {
      Vertex u = next++;
      d.U.push_back(u);
      d.u_set.push_back(sid);
      d.u_match.push_back(j);
      es.emplace_back(j, u);
      for (Vertex a : set) es.emplace_back(a, u);
    }
    d.sets.push_back(set);
    ++sid;
  }
  std::sort(es.begin(), es.end());
  d.graph = Graph::from_edges(next, es);
  return d;
}

// ---- family mini-language --------------------------------------------------------

namespace {
std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  return out;
}

long long to_int(const std::string& s) {
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(s, &pos);
  } catch (...) {
    fail(ErrorCode::ParseError, "bad integer '" + s + "' in graph spec");
  }
  if (pos != s.size() || x < 0) fail(ErrorCode::ParseError, "bad integer '" + s + "' in graph spec");
  return x;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double x = 0;
  try {
    x = std::stod(s, &pos);
  } catch (...) {
    fail(ErrorCode::ParseError, "bad number '" + s + "' in graph spec");
  }
  if (pos != s.size()) fail(ErrorCode::ParseError, "bad number '" + s + "' in graph spec");
  return x;
}
}  // namespace

Graph parse_family(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) fail(ErrorCode::ParseError, "graph spec must look like family:params");
  std::string family = spec.substr(0, colon);
  auto args = split_commas(spec.substr(colon + 1));
  auto need = [&](std::size_t k) {
    if (args.size() != k) fail(ErrorCode::ParseError, family + " expects " + std::to_string(k) + " parameter(s)");
  };
  auto ints = [&] {
    std::vector<std::size_t> v;
    for (auto& a : args) v.push_back(static_cast<std::size_t>(to_int(a)));
    return v;
  };
  if (family == "path") { need(1); return path_graph(ints()[0]); }
  if (family == "cycle") { need(1); return cycle_graph(ints()[0]); }
  if (family == "star") { need(1); return star_graph(ints()[0]); }
  if (family == "complete") { need(1); return complete_graph(ints()[0]); }
  if (family == "hypercube") { need(1); return hypercube(static_cast<int>(ints()[0])); }
  if (family == "kpartite" || family == "bipartite" || family == "multipartite") return complete_multipartite(ints());
  if (family == "grid") return grid_graph(ints());
  if (family == "random") {
    need(3);
    return random_gnp(static_cast<std::size_t>(to_int(args[0])), to_double(args[1]), static_cast<std::uint64_t>(to_int(args[2])));
  }
  if (family == "tree") { need(2); auto v = ints(); return random_tree(v[0], v[1]); }
  if (family == "webbed") { need(2); auto v = ints(); return random_webbed_tree(v[0], v[1]).graph; }
  if (family == "split") { need(2); auto v = ints(); return split_graph_construction(static_cast<int>(v[0]), static_cast<int>(v[1])).graph; }
  if (family == "domsharp") {
    need(3);
    auto v = ints();
    return domination_sharp_construction(static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])).graph;
  }
  fail(ErrorCode::ParseError, "unknown graph family '" + family + "'");
}

}  // namespace revspy
