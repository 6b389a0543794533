#include "revspy/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace revspy {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::CapExceeded: return "cap_exceeded";
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::IllegalMove: return "illegal_move";
    case ErrorCode::OutOfPhase: return "out_of_phase";
    case ErrorCode::GameOver: return "game_over";
    case ErrorCode::NoCover: return "no_cover";
    case ErrorCode::LocalGameInfeasible: return "local_game_infeasible";
    case ErrorCode::TargetInfeasible: return "target_infeasible";
    case ErrorCode::CaseSelectionFailed: return "case_selection_failed";
    case ErrorCode::AvoidingVertexNotFound: return "avoiding_vertex_not_found";
    case ErrorCode::StrategyMismatch: return "strategy_mismatch";
    case ErrorCode::NotFound: return "not_found";
  }
  return "unknown";
}

namespace {
constexpr std::size_t kMatrixLimit = 2048;
}

Graph Graph::from_edges(std::size_t n, const std::vector<Edge>& edges) {
  Graph g;
  g.adj_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (u == v) fail(ErrorCode::InvalidArgument, "loops are not allowed");
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& a : g.adj_) {
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      fail(ErrorCode::InvalidArgument, "duplicate edge");
  }
  g.edge_count_ = edges.size();
  if (n <= kMatrixLimit) {
    std::size_t words = (n + 63) / 64;
    g.matrix_.assign(n * words, 0);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v : g.adj_[u]) g.matrix_[u * words + v / 64] |= 1ULL << (v % 64);
  }
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u >= adj_.size() || v >= adj_.size()) return false;
  if (!matrix_.empty()) {
    std::size_t words = (adj_.size() + 63) / 64;
    return (matrix_[u * words + v / 64] >> (v % 64)) & 1;
  }
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

int Graph::part_count() const {
  if (parts_.empty()) return 0;
  return *std::max_element(parts_.begin(), parts_.end()) + 1;
}

std::vector<std::vector<Vertex>> Graph::part_members() const {
  std::vector<std::vector<Vertex>> out(part_count());
  for (Vertex v = 0; v < parts_.size(); ++v) out[parts_[v]].push_back(v);
  return out;
}

Graph Graph::with_parts(std::vector<int> parts) const {
  if (parts.size() != order()) fail(ErrorCode::InvalidArgument, "part label count differs from vertex count");
  for (int p : parts)
    if (p < 0) fail(ErrorCode::InvalidArgument, "negative part label");
  for (Vertex u = 0; u < order(); ++u)
    for (Vertex v = u + 1; v < order(); ++v)
      if (parts[u] != parts[v] && !adjacent(u, v))
        fail(ErrorCode::InvalidArgument, "part labels do not induce a complete multipartite spanning subgraph");
  Graph g = *this;
  g.parts_ = std::move(parts);
  return g;
}

Graph Graph::with_cube_dimension(int d) const {
  if (d < 0 || d > 30 || (std::size_t{1} << d) != order())
    fail(ErrorCode::InvalidArgument, "cube dimension does not match vertex count");
  for (Vertex u = 0; u < order(); ++u)
    for (Vertex v : adj_[u])
      if (__builtin_popcount(u ^ v) != 1) fail(ErrorCode::InvalidArgument, "not a hypercube labelling");
  if (edge_count_ != (order() / 2) * static_cast<std::size_t>(d))
    fail(ErrorCode::InvalidArgument, "not a hypercube labelling");
  Graph g = *this;
  g.cube_dim_ = d;
  return g;
}

std::vector<int> Graph::distances_from(Vertex s) const {
  std::vector<int> dist(order(), -1);
  std::deque<Vertex> q{s};
  dist[s] = 0;
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop_front();
    for (Vertex v : adj_[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
  }
  return dist;
}

std::vector<std::vector<int>> Graph::all_distances() const {
  std::vector<std::vector<int>> d(order());
  for (Vertex v = 0; v < order(); ++v) d[v] = distances_from(v);
  return d;
}

bool Graph::connected() const {
  if (order() == 0) return true;
  auto d = distances_from(0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

Graph Graph::induced(const std::vector<Vertex>& vs) const {
  std::vector<int> index(order(), -1);
  for (std::size_t i = 0; i < vs.size(); ++i) index[vs[i]] = static_cast<int>(i);
  std::vector<Edge> es;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (Vertex w : adj_[vs[i]])
      if (index[w] > static_cast<int>(i)) es.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(index[w]));
  return from_edges(vs.size(), es);
}

// ---- text format -------------------------------------------------------------

std::string to_text(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.order() << "\n";
  if (g.has_parts()) {
    out << "parts";
    for (int p : g.parts()) out << ' ' << p;
    out << "\n";
  }
  if (g.cube_dimension()) out << "hypercube " << *g.cube_dimension() << "\n";
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << "\n";
  return out.str();
}

namespace {
[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

long long parse_int(const std::string& tok, std::size_t line) {
  if (tok.empty()) parse_fail(line, "missing integer");
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(tok, &pos);
  } catch (...) {
    parse_fail(line, "bad integer '" + tok + "'");
  }
  if (pos != tok.size() || x < 0) parse_fail(line, "bad integer '" + tok + "'");
  return x;
}
}  // namespace

Graph from_text(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<int> parts;
  std::optional<int> dim;
  std::vector<Edge> edges;
  int stage = 0;  // 0 need n, 1 headers allowed, 2 edges only
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    std::istringstream ls(raw);
    std::string key;
    ls >> key;
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (stage == 0) {
      if (key != "n" || toks.size() != 1) parse_fail(lineno, "expected 'n <count>'");
      n = static_cast<std::size_t>(parse_int(toks[0], lineno));
      stage = 1;
    } else if (key == "parts") {
      if (stage != 1 || !parts.empty() || dim) parse_fail(lineno, "misplaced parts header");
      if (toks.size() != *n) parse_fail(lineno, "parts header needs one label per vertex");
      for (auto& t : toks) parts.push_back(static_cast<int>(parse_int(t, lineno)));
    } else if (key == "hypercube") {
      if (stage != 1 || dim || toks.size() != 1) parse_fail(lineno, "misplaced hypercube header");
      dim = static_cast<int>(parse_int(toks[0], lineno));
    } else if (key == "e") {
      stage = 2;
      if (toks.size() != 2) parse_fail(lineno, "expected 'e u v'");
      auto u = parse_int(toks[0], lineno), v = parse_int(toks[1], lineno);
      if (u >= v) parse_fail(lineno, "edge must satisfy u < v");
      if (static_cast<std::size_t>(v) >= *n) parse_fail(lineno, "vertex out of range");
      Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
      if (!edges.empty() && !(edges.back() < e)) parse_fail(lineno, "edges must be sorted and unique");
      edges.push_back(e);
    } else {
      parse_fail(lineno, "unknown record '" + key + "'");
    }
  }
  if (!n) fail(ErrorCode::ParseError, "empty graph file");
  Graph g = Graph::from_edges(*n, edges);
  try {
    if (!parts.empty()) g = g.with_parts(parts);
    if (dim) g = g.with_cube_dimension(*dim);
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  return g;
}

// ---- rooted trees --------------------------------------------------------------

RootedTree RootedTree::from_parents(Vertex root, std::vector<int> parent) {
  RootedTree t;
  const std::size_t n = parent.size();
  if (root >= n || parent[root] != -1) fail(ErrorCode::InvalidArgument, "root must have no parent");
  t.root = root;
  t.parent = std::move(parent);
  t.children.assign(n, {});
  for (Vertex v = 0; v < n; ++v) {
    if (v == root) continue;
    int p = t.parent[v];
    if (p < 0 || static_cast<std::size_t>(p) >= n) fail(ErrorCode::InvalidArgument, "bad parent");
    t.children[p].push_back(v);
  }
  t.depth.assign(n, -1);
  t.depth[root] = 0;
  t.bfs_order = {root};
  for (std::size_t i = 0; i < t.bfs_order.size(); ++i)
    for (Vertex c : t.children[t.bfs_order[i]]) {
      t.depth[c] = t.depth[t.bfs_order[i]] + 1;
      t.bfs_order.push_back(c);
    }
  if (t.bfs_order.size() != n) fail(ErrorCode::InvalidArgument, "parent map is not a spanning tree");
  return t;
}

std::vector<Vertex> RootedTree::descendants(Vertex v) const {
  std::vector<Vertex> out{v};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Vertex c : children[out[i]]) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

bool RootedTree::is_spanning_tree_of(const Graph& g) const {
  if (parent.size() != g.order()) return false;
  for (Vertex v = 0; v < g.order(); ++v)
    if (v != root && !g.adjacent(v, static_cast<Vertex>(parent[v]))) return false;
  return true;
}

// ---- combinatorics helpers ------------------------------------------------------

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace revspy
