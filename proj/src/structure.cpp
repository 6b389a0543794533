#include "revspy/structure.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace revspy {

std::optional<Vertex> dominating_vertex(const Graph& g) {
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) + 1 == g.order()) return v;
  return std::nullopt;
}

DominatingSet minimum_dominating_set(const Graph& g, std::size_t vertex_cap) {
  const std::size_t n = g.order();
  if (n > vertex_cap) fail(ErrorCode::CapExceeded, "domination search exceeds vertex cap");
  if (n > 64) fail(ErrorCode::CapExceeded, "domination search supports at most 64 vertices");
  if (n == 0) return {};
  std::vector<std::uint64_t> closed(n);
  for (Vertex v = 0; v < n; ++v) {
    closed[v] = 1ULL << v;
    for (Vertex w : g.neighbors(v)) closed[v] |= 1ULL << w;
  }
  const std::uint64_t all = n == 64 ? ~0ULL : (1ULL << n) - 1;
  for (int k = 1; k <= static_cast<int>(n); ++k) {
    std::vector<Vertex> chosen;
    std::function<bool(Vertex, std::uint64_t)> rec = [&](Vertex start, std::uint64_t covered) -> bool {
      if (static_cast<int>(chosen.size()) == k) return covered == all;
      // The lowest undominated vertex must be dominated by one of its closed neighbours.
      std::uint64_t missing = all & ~covered;
      Vertex low = static_cast<Vertex>(std::countr_zero(missing));
      for (Vertex v = start; v < n; ++v) {
        if (!((closed[v] >> low) & 1)) continue;
        chosen.push_back(v);
        if (rec(0, covered | closed[v])) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (rec(0, 0)) {
      std::sort(chosen.begin(), chosen.end());
      return {k, chosen};
    }
  }
  return {};  // unreachable
}

int domination_number(const Graph& g, std::size_t vertex_cap) {
  return minimum_dominating_set(g, vertex_cap).size;
}

std::optional<RootedTree> recognize_webbed_tree(const Graph& g) {
  const std::size_t n = g.order();
  if (n == 0 || !g.connected()) return std::nullopt;
  for (Vertex root = 0; root < n; ++root) {
    auto depth = g.distances_from(root);
    std::vector<int> parent(n, -1);
    bool ok = true;
    for (Vertex v = 0; v < n && ok; ++v) {
      if (v == root) continue;
      int ups = 0;
      for (Vertex w : g.neighbors(v))
        if (depth[w] == depth[v] - 1) {
          ++ups;
          parent[v] = static_cast<int>(w);
        }
      ok = ups == 1;
    }
    for (Vertex u = 0; u < n && ok; ++u)
      for (Vertex w : g.neighbors(u))
        if (depth[u] == depth[w] && parent[u] != parent[w]) ok = false;
    if (ok) return RootedTree::from_parents(root, parent);
  }
  return std::nullopt;
}

namespace {
bool webbed_witness(const Graph& g, const std::vector<int>& parent, Vertex root) {
  // Parent function must be acyclic and spanning; then check non-tree edges.
  const std::size_t n = g.order();
  for (Vertex v = 0; v < n; ++v) {
    std::size_t steps = 0;
    Vertex x = v;
    while (x != root) {
      if (parent[x] < 0 || ++steps > n) return false;
      x = static_cast<Vertex>(parent[x]);
    }
  }
  for (auto [u, v] : g.edges()) {
    bool tree_edge = parent[u] == static_cast<int>(v) || parent[v] == static_cast<int>(u);
    if (!tree_edge && parent[u] != parent[v]) return false;
    if (!tree_edge && (u == root || v == root)) return false;
  }
  return true;
}
}  // namespace

std::optional<RootedTree> recognize_webbed_tree_exhaustive(const Graph& g) {
  const std::size_t n = g.order();
  if (n == 0 || n > 9) fail(ErrorCode::CapExceeded, "exhaustive webbed-tree search limited to 9 vertices");
  for (Vertex root = 0; root < n; ++root) {
    std::vector<int> parent(n, -1);
    std::function<bool(Vertex)> rec = [&](Vertex v) -> bool {
      if (v == n) return webbed_witness(g, parent, root);
      if (v == root) return rec(v + 1);
      for (Vertex p : g.neighbors(v)) {
        parent[v] = static_cast<int>(p);
        if (rec(v + 1)) return true;
      }
      parent[v] = -1;
      return false;
    };
    if (rec(0)) return RootedTree::from_parents(root, parent);
  }
  return std::nullopt;
}

double common_neighbourhood_ratio(const Graph& g) {
  double best = 1.0;
  std::vector<char> mark(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 0) fail(ErrorCode::InvalidArgument, "isolated vertex: common-neighbourhood ratio undefined");
    for (Vertex x : g.neighbors(v)) mark[x] = 1;
    for (Vertex w = 0; w < g.order(); ++w) {
      std::size_t common = 0;
      for (Vertex x : g.neighbors(w)) common += mark[x];
      best = std::min(best, static_cast<double>(common) / static_cast<double>(g.degree(v)));
    }
    for (Vertex x : g.neighbors(v)) mark[x] = 0;
  }
  return best;
}

bool is_q_common(const Graph& g, double q) {
  if (!(q > 0.0 && q < 1.0)) fail(ErrorCode::InvalidArgument, "q must lie in (0,1)");
  std::vector<char> mark(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 0) fail(ErrorCode::InvalidArgument, "isolated vertex: common-neighbourhood ratio undefined");
    for (Vertex x : g.neighbors(v)) mark[x] = 1;
    bool ok = true;
    for (Vertex w = 0; w < g.order() && ok; ++w) {
      std::size_t common = 0;
      for (Vertex x : g.neighbors(w)) common += mark[x];
      ok = static_cast<double>(common) >= q * static_cast<double>(g.degree(v));
    }
    for (Vertex x : g.neighbors(v)) mark[x] = 0;
    if (!ok) return false;
  }
  return true;
}

bool has_r_extension_property(const Graph& g, int r, std::uint64_t pair_cap) {
  if (r < 1) fail(ErrorCode::InvalidArgument, "r must be at least 1");
  const std::size_t n = g.order();
  std::uint64_t total = 0;
  for (int k = 0; k <= r && k <= static_cast<int>(n); ++k) {
    std::uint64_t c = binomial(n, k);
    std::uint64_t add = k >= 63 ? UINT64_MAX : c << k;
    if (c != 0 && (add >> k) != c) add = UINT64_MAX;
    total = (UINT64_MAX - total < add) ? UINT64_MAX : total + add;
  }
  if (total > pair_cap) fail(ErrorCode::CapExceeded, "extension-property enumeration exceeds cap");
  // Neighbourhood bitsets.
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> nb(n * words, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) nb[v * words + w / 64] |= 1ULL << (w % 64);
  std::vector<std::uint64_t> cand(words);
  for (int k = 0; k <= r && k <= static_cast<int>(n); ++k) {
    for (const auto& set : k_subsets(static_cast<int>(n), k)) {
      for (std::uint64_t colour = 0; colour < (1ULL << k); ++colour) {
        // candidates: all vertices outside the set
        std::fill(cand.begin(), cand.end(), ~0ULL);
        if (n % 64) cand[words - 1] = (1ULL << (n % 64)) - 1;
        for (int i = 0; i < k; ++i) {
          Vertex x = static_cast<Vertex>(set[i]);
          cand[x / 64] &= ~(1ULL << (x % 64));
          bool in_t = (colour >> i) & 1;
          for (std::size_t wi = 0; wi < words; ++wi) cand[wi] &= in_t ? nb[x * words + wi] : ~nb[x * words + wi];
        }
        if (std::all_of(cand.begin(), cand.end(), [](std::uint64_t w) { return w == 0; })) return false;
      }
    }
  }
  return true;
}

std::uint64_t ball_size(int d, int k) {
  std::uint64_t b = 0;
  for (int i = 0; i < k; ++i) b += binomial(d, i);
  return b;
}

CodeSet greedy_code(int d, int k, int dim_cap) {
  if (!(k >= 1 && k <= d)) fail(ErrorCode::InvalidArgument, "need 1 <= k <= d");
  if (d > dim_cap || d > 30) fail(ErrorCode::CapExceeded, "code dimension exceeds cap");
  CodeSet c{d, k, {}};
  for (std::uint64_t v = 0; v < (1ULL << d); ++v) {
    bool ok = std::all_of(c.members.begin(), c.members.end(),
                          [&](std::uint64_t w) { return std::popcount(v ^ w) >= k; });
    if (ok) c.members.push_back(v);
  }
  return c;
}

bool is_retraction(const RetractionMap& f) {
  const Graph& g = f.host;
  if (f.map.size() != g.order()) return false;
  std::vector<char> in_image(g.order());
  for (Vertex v : f.image) in_image[v] = 1;
  for (Vertex v : f.image)
    if (f.map[v] != v) return false;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!in_image[f.map[v]]) return false;
  for (auto [u, v] : g.edges())
    if (!g.closed_adjacent(f.map[u], f.map[v])) return false;
  return true;
}

RetractionMap subcube_retraction(int d, const std::vector<int>& coords) {
  if (coords.empty()) fail(ErrorCode::InvalidArgument, "coordinate set must be nonempty");
  std::uint32_t mask = 0;
  for (int c : coords) {
    if (c < 0 || c >= d) fail(ErrorCode::InvalidArgument, "coordinate out of range");
    mask |= 1u << c;
  }
  RetractionMap f;
  f.host = hypercube(d);
  f.map.resize(f.host.order());
  for (Vertex v = 0; v < f.host.order(); ++v) {
    f.map[v] = v & mask;
    if ((v & ~mask) == 0) f.image.push_back(v);
  }
  return f;
}

ProductRetraction product_retraction(const std::vector<std::pair<Graph, Edge>>& factors) {
  if (factors.empty()) fail(ErrorCode::InvalidArgument, "need at least one factor");
  std::vector<Vertex> lo, hi;
  std::vector<std::size_t> stride{1};
  for (const auto& [g, e] : factors) {
    if (!g.adjacent(e.first, e.second)) fail(ErrorCode::InvalidArgument, "designated edge missing from factor");
    lo.push_back(std::min(e.first, e.second));
    hi.push_back(std::max(e.first, e.second));
    stride.push_back(stride.back() * g.order());
  }
  Graph host = factors[0].first;
  for (std::size_t i = 1; i < factors.size(); ++i) host = cartesian_product(host, factors[i].first);
  const int d = static_cast<int>(factors.size());
  ProductRetraction out;
  out.map.host = host;
  out.map.map.resize(host.order());
  for (Vertex x = 0; x < host.order(); ++x) {
    std::size_t y = 0;
    for (int i = 0; i < d; ++i) {
      Vertex xi = static_cast<Vertex>((x / stride[i]) % factors[i].first.order());
      // g_i: the first endpoint is fixed, everything else goes to the second
      const Edge& e = factors[i].second;
      Vertex gi = xi == e.first ? e.first : e.second;
      y += gi * stride[i];
    }
    out.map.map[x] = static_cast<Vertex>(y);
  }
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    std::size_t y = 0;
    for (int i = 0; i < d; ++i) y += ((mask >> i) & 1 ? hi[i] : lo[i]) * stride[i];
    out.map.image.push_back(static_cast<Vertex>(y));
  }
  out.cube = hypercube(d);
  return out;
}

}  // namespace revspy
