#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "revspy/avoiding.hpp"
#include "revspy/matching.hpp"
#include "revspy/rng.hpp"

using namespace revspy;

namespace {

// Maximum matching by DP over subsets of the right side.
int naive_matching(const BipartiteInstance& inst) {
  std::vector<int> best(1u << inst.right, -1);
  best[0] = 0;
  int answer = 0;
  for (int l = 0; l < inst.left; ++l) {
    auto next = best;
    for (std::uint32_t used = 0; used < best.size(); ++used) {
      if (best[used] < 0) continue;
      for (int r : inst.adj[l])
        if (!(used >> r & 1)) next[used | 1u << r] = std::max(next[used | 1u << r], best[used] + 1);
    }
    best = next;
  }
  for (int b : best) answer = std::max(answer, b);
  return answer;
}

BipartiteInstance random_instance(Rng& rng, int left, int right, double p) {
  auto inst = BipartiteInstance::make(left, right);
  for (int l = 0; l < left; ++l)
    for (int r = 0; r < right; ++r)
      if (rng.bernoulli(p)) inst.add(l, r);
  return inst;
}

// Fewest movers over all injective assignments meetings -> spies; -1 if none.
int naive_min_movers(const std::vector<Vertex>& meetings, const std::vector<Vertex>& spies, const Graph& g) {
  int best = -1;
  std::vector<bool> used(spies.size());
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int movers) {
    if (i == meetings.size()) {
      if (best < 0 || movers < best) best = movers;
      return;
    }
    for (std::size_t s = 0; s < spies.size(); ++s) {
      if (used[s] || !g.closed_adjacent(spies[s], meetings[i])) continue;
      used[s] = true;
      rec(i + 1, movers + (spies[s] != meetings[i]));
      used[s] = false;
    }
  };
  rec(0, 0);
  return best;
}

CubeMask mask_of(std::initializer_list<int> bits) {
  CubeMask m;
  for (int b : bits) m.set(b);
  return m;
}

}  // namespace

TEST(Matching, AgreesWithSubsetDp) {
  Rng rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    int left = 1 + rng.below(7), right = 1 + rng.below(7);
    auto inst = random_instance(rng, left, right, 0.15 + 0.1 * (trial % 5));
    auto match = max_matching(inst);
    ASSERT_EQ(match.size(), static_cast<std::size_t>(left));
    std::vector<int> seen(right, 0);
    for (int l = 0; l < left; ++l) {
      if (match[l] < 0) continue;
      EXPECT_NE(std::find(inst.adj[l].begin(), inst.adj[l].end(), match[l]), inst.adj[l].end());
      EXPECT_EQ(seen[match[l]]++, 0);
    }
    EXPECT_EQ(matching_size(match), naive_matching(inst));
  }
}

TEST(Matching, HallViolator) {
  auto inst = BipartiteInstance::make(3, 3);
  inst.add(0, 0);
  inst.add(1, 0);
  inst.add(2, 1);
  auto s = hall_violator(inst);
  ASSERT_TRUE(s.has_value());
  EXPECT_LT(neighbourhood(inst, *s).size(), s->size());

  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    int left = 1 + rng.below(6), right = 1 + rng.below(6);
    auto g = random_instance(rng, left, right, 0.35);
    auto v = hall_violator(g);
    EXPECT_EQ(v.has_value(), naive_matching(g) < left);
    if (v) EXPECT_LT(neighbourhood(g, *v).size(), v->size());
  }
}

TEST(Cover, StarAndPath) {
  Graph star = star_graph(4);
  auto c = min_movers_cover({1, 2}, {0, 1}, star);
  EXPECT_EQ(c.movers, (std::vector<int>{0}));  // spy 1 stays on leaf 1, centre spy steps to 2
  EXPECT_TRUE(coverable({1, 2}, {0, 0}, star));
  EXPECT_FALSE(coverable({1, 2, 3}, {0, 0}, star));
  EXPECT_FALSE(coverable({1, 2}, {3, 4}, star));
  try {
    min_movers_cover({1, 2}, {3, 4}, star);
    FAIL() << "expected NoCover";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoCover);
  }
  auto p = min_movers_cover({}, {1, 2}, path_graph(4));
  EXPECT_TRUE(p.movers.empty());
}

TEST(Cover, MinMoversAgreesWithExhaustive) {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = random_gnp(8, 0.3, trial);
    std::vector<Vertex> meetings, spies;
    for (Vertex v = 0; v < 8; ++v)
      if (rng.bernoulli(0.35)) meetings.push_back(v);
    int k = static_cast<int>(meetings.size()) + static_cast<int>(rng.below(3));
    for (int i = 0; i < k; ++i) spies.push_back(rng.below(8));
    std::sort(spies.begin(), spies.end());
    int expect = naive_min_movers(meetings, spies, g);
    EXPECT_EQ(coverable(meetings, spies, g), expect >= 0);
    if (expect < 0) {
      EXPECT_THROW(min_movers_cover(meetings, spies, g), Error);
      continue;
    }
    auto c = min_movers_cover(meetings, spies, g);
    EXPECT_EQ(static_cast<int>(c.movers.size()), expect);
    std::vector<int> used(spies.size(), 0);
    for (std::size_t i = 0; i < c.meetings.size(); ++i) {
      EXPECT_TRUE(g.closed_adjacent(spies[c.spy_of[i]], c.meetings[i]));
      EXPECT_EQ(used[c.spy_of[i]]++, 0);
    }
  }
}

TEST(Avoiding, Examples) {
  auto w = avoiding_vertex(10, 2, {}, 1);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(*w, mask_of({0, 1}));

  std::vector<CubeMask> pairs;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) pairs.push_back(mask_of({i, j}));
  EXPECT_FALSE(avoiding_vertex(6, 2, pairs, 3).has_value());

  EXPECT_THROW(avoiding_vertex(6, 2, {mask_of({1})}, 3), Error);  // weight-1 spy
  EXPECT_THROW(avoiding_vertex(6, 7, {}, 3), Error);
}

TEST(Avoiding, ResultIsFarFromEverySpy) {
  Rng rng(99);
  for (auto [t, m] : std::vector<std::pair<int, int>>{{78, 2}, {117, 3}, {20, 2}, {30, 4}}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<CubeMask> spies;
      int s = 1 + rng.below(t / m);
      for (int i = 0; i < s; ++i) {
        CubeMask v;
        int weight = 2 + rng.below(m);
        while (static_cast<int>(v.count()) < weight) v.set(rng.below(t));
        spies.push_back(v);
      }
      AvoidingSearchStats st;
      auto w = avoiding_vertex(t, m, spies, trial, 200, 200'000'000, &st);
      if (!w) {
        EXPECT_TRUE(st.used_fallback);
        continue;
      }
      EXPECT_EQ(static_cast<int>(w->count()), m);
      for (int i = t; i < kMaxCubeDim; ++i) EXPECT_FALSE((*w)[i]);
      for (const auto& v : spies) EXPECT_GE(cube_distance(v, *w), m);
    }
  }
}

TEST(Avoiding, PrefixRule) {
  // Within m-1 of v for weight-m u is exactly 2|u ∩ v| > |v|, checked against distances.
  Rng rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    int m = 2 + rng.below(3);
    CubeMask u, v;
    while (static_cast<int>(u.count()) < m) u.set(rng.below(9));
    int wv = 1 + rng.below(8);
    while (static_cast<int>(v.count()) < wv) v.set(rng.below(9));
    EXPECT_EQ(within_distance_prefix(v, u), cube_distance(u, v) <= m - 1);
  }
}
