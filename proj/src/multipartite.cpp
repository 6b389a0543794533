#include "revspy/multipartite.hpp"

#include <algorithm>
#include <functional>

namespace revspy {

bool is_complete_multipartite(const Graph& g) {
  if (!g.has_parts()) return false;
  const auto& p = g.parts();
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v)
      if (p[u] != p[v] && !g.adjacent(u, v)) return false;
  return true;
}

bool is_r_large(const Graph& g, int r) {
  if (!g.has_parts()) return false;
  for (const auto& members : g.part_members())
    if (static_cast<int>(members.size()) < 2 * r) return false;
  return true;
}

void require_multipartite(const Graph& g, int r, bool need_r_large) {
  if (!is_complete_multipartite(g)) fail(ErrorCode::StrategyMismatch, "graph is not declared complete multipartite");
  if (need_r_large && !is_r_large(g, r)) fail(ErrorCode::StrategyMismatch, "graph is not r-large (some part has fewer than 2r vertices)");
}

PartCounts part_counts(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies) {
  const int k = g.part_count();
  PartCounts pc{std::vector<int>(k), std::vector<int>(k), std::vector<int>(k), std::vector<int>(k)};
  for (Vertex v = 0; v < g.order(); ++v) {
    int j = g.parts()[v];
    pc.revs[j] += revs[v];
    pc.spies[j] += spies[v];
    if (spies[v] > 0) pc.covered[j] += revs[v];
    else pc.max_uncovered[j] = std::max(pc.max_uncovered[j], revs[v]);
  }
  return pc;
}

SwarmPlan swarm_plan(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies, int part, int m,
                     const std::vector<int>* pinned) {
  const auto& parts = g.parts();
  SwarmPlan plan;
  std::vector<std::pair<Vertex, int>> sources;  // outside vertices and movable counts
  int incoming = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (parts[v] == part) continue;
    plan.outside_spies += spies[v];
    int movable = revs[v] - (pinned ? (*pinned)[v] : 0);
    if (movable > 0) {
      sources.emplace_back(v, movable);
      incoming += movable;
    }
  }
  std::vector<int> after = revs;
  std::vector<std::pair<Vertex, int>> dests;
  auto send = [&](Vertex v, int c) {
    dests.emplace_back(v, c);
    after[v] += c;
    incoming -= c;
  };
  // Uncovered partial meetings, fullest first.
  std::vector<Vertex> partial, empty;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (parts[v] != part || spies[v] > 0) continue;
    if (revs[v] > 0 && revs[v] < m) partial.push_back(v);
    if (revs[v] == 0) empty.push_back(v);
  }
  std::stable_sort(partial.begin(), partial.end(), [&](Vertex a, Vertex b) { return revs[a] > revs[b]; });
  for (Vertex v : partial) {
    int need = m - revs[v];
    if (need <= incoming) send(v, need);
  }
  std::size_t next_empty = 0;
  while (incoming >= m && next_empty < empty.size()) send(empty[next_empty++], m);
  if (incoming > 0) {
    // Leftovers: the fullest still-partial uncovered vertex, else an empty one, else anywhere in the part.
    Vertex target = 0;
    bool found = false;
    for (Vertex v : partial)
      if (after[v] < m) {
        target = v;
        found = true;
        break;
      }
    if (!found && next_empty < empty.size()) {
      target = empty[next_empty];
      found = true;
    }
    if (!found)
      for (Vertex v = 0; v < g.order() && !found; ++v)
        if (parts[v] == part) {
          target = v;
          found = true;
        }
    send(target, incoming);
  }
  // Pair sources with destinations in order.
  std::size_t si = 0;
  int left_here = sources.empty() ? 0 : sources[0].second;
  for (auto [d, c] : dests) {
    while (c > 0) {
      int take = std::min(c, left_here);
      plan.move.add(sources[si].first, d, take);
      c -= take;
      left_here -= take;
      if (left_here == 0 && ++si < sources.size()) left_here = sources[si].second;
    }
  }
  plan.move = plan.move.normalized();
  for (Vertex v = 0; v < g.order(); ++v)
    if (parts[v] == part && spies[v] == 0 && after[v] >= m) ++plan.new_meetings;
  return plan;
}

MoveSet swarm_move(const GameSpec& spec, const Position& pos, int part) {
  require_multipartite(spec.g(), spec.r);
  return swarm_plan(spec.g(), pos.revs, pos.spies, part, spec.m).move;
}

int swarm_optimum_bruteforce(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies, int part,
                             int m) {
  std::vector<Vertex> targets;
  std::vector<Vertex> movers;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.parts()[v] == part) targets.push_back(v);
    else movers.insert(movers.end(), revs[v], v);
  }
  std::vector<int> after = revs;
  for (Vertex v : movers) after[v] -= 1;
  int best = 0;
  // Pieces are interchangeable: distribute the movers as a multiset over targets
  // in nondecreasing target order.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t from) {
    if (i == movers.size()) {
      int c = 0;
      for (Vertex t : targets)
        if (spies[t] == 0 && after[t] >= m) ++c;
      best = std::max(best, c);
      return;
    }
    for (std::size_t j = from; j < targets.size(); ++j) {
      ++after[targets[j]];
      rec(i + 1, j);
      --after[targets[j]];
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace revspy
