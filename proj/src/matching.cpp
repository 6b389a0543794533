#include "revspy/matching.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <functional>
#include <sstream>

namespace revspy {

std::vector<int> max_matching(const BipartiteInstance& inst) {
  std::vector<int> match_left(inst.left, -1), match_right(inst.right, -1);
  std::vector<int> seen(inst.right, -1);
  std::function<bool(int, int)> augment = [&](int l, int stamp) -> bool {
    for (int r : inst.adj[l]) {
      if (seen[r] == stamp) continue;
      seen[r] = stamp;
      if (match_right[r] < 0 || augment(match_right[r], stamp)) {
        match_left[l] = r;
        match_right[r] = l;
        return true;
      }
    }
    return false;
  };
  for (int l = 0; l < inst.left; ++l) augment(l, l);
  return match_left;
}

int matching_size(const std::vector<int>& match) {
  return static_cast<int>(std::count_if(match.begin(), match.end(), [](int x) { return x >= 0; }));
}

std::vector<int> neighbourhood(const BipartiteInstance& inst, const std::vector<int>& left_set) {
  std::vector<int> out;
  for (int l : left_set) out.insert(out.end(), inst.adj[l].begin(), inst.adj[l].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::vector<int>> hall_violator(const BipartiteInstance& inst) {
  auto match = max_matching(inst);
  std::vector<int> match_right(inst.right, -1);
  for (int l = 0; l < inst.left; ++l)
    if (match[l] >= 0) match_right[match[l]] = l;
  int root = -1;
  for (int l = 0; l < inst.left && root < 0; ++l)
    if (match[l] < 0) root = l;
  if (root < 0) return std::nullopt;
  // Left vertices reachable from the unmatched root by alternating paths.
  std::vector<char> left_seen(inst.left), right_seen(inst.right);
  std::deque<int> q{root};
  left_seen[root] = 1;
  while (!q.empty()) {
    int l = q.front();
    q.pop_front();
    for (int r : inst.adj[l]) {
      if (right_seen[r]) continue;
      right_seen[r] = 1;
      int next = match_right[r];  // always matched, else the matching was not maximum
      if (next >= 0 && !left_seen[next]) {
        left_seen[next] = 1;
        q.push_back(next);
      }
    }
  }
  std::vector<int> s;
  for (int l = 0; l < inst.left; ++l)
    if (left_seen[l]) s.push_back(l);
  return s;
}

namespace {
// Min-cost bipartite matching saturating the left side; costs are small ints.
// Successive shortest paths with Bellman-Ford; instances here are tiny.
struct MinCostMatcher {
  int left, right;
  std::vector<std::vector<std::pair<int, int>>> adj;  // left -> (right, cost)

  // Returns match_left or empty if the left side cannot be saturated.
  std::vector<int> solve() const {
    std::vector<int> ml(left, -1), mr(right, -1);
    for (int root = 0; root < left; ++root) {
      // Nodes: left 0..L-1, right L..L+R-1. dist over residual graph.
      const int n = left + right;
      std::vector<int> dist(n, INT_MAX), prev(n, -1);
      dist[root] = 0;
      for (int iter = 0; iter < n; ++iter) {
        bool changed = false;
        for (int l = 0; l < left; ++l) {
          if (dist[l] == INT_MAX) continue;
          for (auto [r, c] : adj[l]) {
            if (ml[l] == r) continue;  // forward edges only for unmatched pairs
            int nd = dist[l] + c;
            if (nd < dist[left + r]) {
              dist[left + r] = nd;
              prev[left + r] = l;
              changed = true;
            }
          }
        }
        for (int r = 0; r < right; ++r) {
          if (dist[left + r] == INT_MAX || mr[r] < 0) continue;
          int l = mr[r];
          int c = 0;
          for (auto [rr, cc] : adj[l])
            if (rr == r) c = cc;
          int nd = dist[left + r] - c;
          if (nd < dist[l]) {
            dist[l] = nd;
            prev[l] = left + r;
            changed = true;
          }
        }
        if (!changed) break;
      }
      int best = -1;
      for (int r = 0; r < right; ++r)
        if (mr[r] < 0 && dist[left + r] != INT_MAX && (best < 0 || dist[left + r] < dist[left + best])) best = r;
      if (best < 0) return {};
      // Walk back and flip.
      int node = left + best;
      while (node != root) {
        int l = prev[node];
        int r = node - left;
        int old = ml[l];
        ml[l] = r;
        mr[r] = l;
        if (l == root) break;
        node = left + old;
        (void)old;
      }
    }
    return ml;
  }
};
}  // namespace

CoverAssignment min_movers_cover(const std::vector<Vertex>& meetings_in,
                                 const std::vector<Vertex>& spies, const Graph& g) {
  CoverAssignment out;
  out.meetings = meetings_in;
  std::sort(out.meetings.begin(), out.meetings.end());
  out.meetings.erase(std::unique(out.meetings.begin(), out.meetings.end()), out.meetings.end());
  const int L = static_cast<int>(out.meetings.size()), R = static_cast<int>(spies.size());
  MinCostMatcher mc{L, R, std::vector<std::vector<std::pair<int, int>>>(L)};
  auto inst = BipartiteInstance::make(L, R);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < R; ++j)
      if (g.closed_adjacent(spies[j], out.meetings[i])) {
        mc.adj[i].emplace_back(j, spies[j] == out.meetings[i] ? 0 : 1);
        inst.add(i, j);
      }
  auto ml = mc.solve();
  if (ml.empty() && L > 0) {
    auto s = hall_violator(inst);
    std::ostringstream msg;
    msg << "meetings cannot be covered; Hall violator:";
    if (s)
      for (int i : *s) msg << ' ' << out.meetings[i];
    fail(ErrorCode::NoCover, msg.str());
  }
  out.spy_of = ml;
  for (int i = 0; i < L; ++i)
    if (spies[ml[i]] != out.meetings[i]) out.movers.push_back(ml[i]);
  std::sort(out.movers.begin(), out.movers.end());
  return out;
}

bool coverable(const std::vector<Vertex>& meetings, const std::vector<Vertex>& spies, const Graph& g) {
  auto inst = BipartiteInstance::make(static_cast<int>(meetings.size()), static_cast<int>(spies.size()));
  for (std::size_t i = 0; i < meetings.size(); ++i)
    for (std::size_t j = 0; j < spies.size(); ++j)
      if (g.closed_adjacent(spies[j], meetings[i])) inst.add(static_cast<int>(i), static_cast<int>(j));
  return matching_size(max_matching(inst)) == static_cast<int>(meetings.size());
}

}  // namespace revspy
