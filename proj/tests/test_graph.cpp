#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "revspy/rng.hpp"
#include "revspy/structure.hpp"

using namespace revspy;

namespace {

bool symmetric_loop_free(const Graph& g) {
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.adjacent(v, v)) return false;
    for (Vertex u : g.neighbors(v))
      if (!g.adjacent(u, v)) return false;
  }
  return true;
}

std::set<Edge> edge_set(const Graph& g) {
  auto e = g.edges();
  return {e.begin(), e.end()};
}

}  // namespace

TEST(Generators, HypercubeThree) {
  Graph q = hypercube(3);
  EXPECT_EQ(q.order(), 8u);
  EXPECT_EQ(q.edge_count(), 12u);
  for (Vertex v = 0; v < 8; ++v) EXPECT_EQ(q.degree(v), 3u);
  EXPECT_EQ(q.cube_dimension(), 3);
  EXPECT_TRUE(q.adjacent(0b101, 0b100));
  EXPECT_FALSE(q.adjacent(0b101, 0b110));
}

TEST(Generators, K22IsFourCycle) {
  Graph k = complete_multipartite({2, 2});
  EXPECT_TRUE(k.same_edges(Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}})));
  EXPECT_EQ(k.part_count(), 2);
  EXPECT_EQ(k.edge_count(), 4u);
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(k.degree(v), 2u);
}

TEST(Generators, RandomMatchesIndependentRegeneration) {
  // Same seed, same coin flips in u<v order with the documented generator.
  Graph g = random_gnp(30, 0.5, 7);
  Rng rng(7);
  std::size_t edges = 0;
  std::set<Edge> expect;
  for (Vertex u = 0; u < 30; ++u)
    for (Vertex v = u + 1; v < 30; ++v)
      if (rng.uniform() < 0.5) expect.insert({u, v}), ++edges;
  EXPECT_EQ(g.edge_count(), edges);
  EXPECT_EQ(edge_set(g), expect);
  EXPECT_TRUE(random_gnp(30, 0.5, 7) == g);
  EXPECT_FALSE(random_gnp(30, 0.5, 8) == g);
}

TEST(Generators, ErrorsOnBadInput) {
  EXPECT_THROW(path_graph(0), Error);
  EXPECT_THROW(random_gnp(5, 1.5, 1), Error);
  EXPECT_THROW(random_gnp(5, -0.1, 1), Error);
  EXPECT_THROW(Graph::from_edges(3, {{0, 0}}), Error);
  EXPECT_THROW(Graph::from_edges(3, {{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(Graph::from_edges(3, {{0, 3}}), Error);
}

TEST(Generators, AllSymmetricAndLoopFree) {
  std::vector<Graph> all = {path_graph(5),        cycle_graph(6),          star_graph(4),
                            complete_graph(5),    hypercube(4),            complete_multipartite({2, 3, 4}),
                            random_gnp(20, 0.3, 2), random_tree(12, 3),    random_webbed_tree(12, 3).graph,
                            grid_graph({3, 3, 3}), graph_power(cycle_graph(7), 2),
                            split_graph_construction(2, 4).graph, domination_sharp_construction(2, 2, 4).graph};
  for (const auto& g : all) EXPECT_TRUE(symmetric_loop_free(g));
}

TEST(Generators, TreesAreTreesAndWebbedWitnessHolds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph t = random_tree(10, seed);
    EXPECT_EQ(t.edge_count(), 9u);
    EXPECT_TRUE(t.connected());
    auto wt = random_webbed_tree(10, seed);
    EXPECT_TRUE(wt.tree.is_spanning_tree_of(wt.graph));
    for (auto [u, v] : wt.graph.edges()) {
      bool tree_edge = wt.tree.parent[u] == static_cast<int>(v) || wt.tree.parent[v] == static_cast<int>(u);
      if (!tree_edge) EXPECT_EQ(wt.tree.parent[u], wt.tree.parent[v]);
    }
  }
}

TEST(GraphText, RoundTripAndStrictParse) {
  Graph g = complete_multipartite({2, 3});
  EXPECT_TRUE(from_text(to_text(g)) == g);
  Graph q = hypercube(3);
  EXPECT_TRUE(from_text(to_text(q)) == q);
  EXPECT_EQ(to_text(path_graph(3)), "n 3\ne 0 1\ne 1 2\n");
  EXPECT_THROW(from_text("n 3\ne 0 1\ne 0 1\n"), Error);  // duplicate
  EXPECT_THROW(from_text("n 3\ne 1 2\ne 0 1\n"), Error);  // unsorted
  EXPECT_THROW(from_text("n 3\ne 1 0\n"), Error);         // u > v
  EXPECT_THROW(from_text("e 0 1\n"), Error);              // missing header
}

TEST(SplitConstruction, Sizes) {
  auto a = split_graph_construction(2, 3);
  EXPECT_EQ(a.graph.order(), 6u);
  EXPECT_EQ(a.sets.size(), 3u);
  std::set<std::vector<Vertex>> distinct(a.sets.begin(), a.sets.end());
  EXPECT_EQ(distinct.size(), 3u);
  for (std::size_t i = 0; i < a.sets.size(); ++i) {
    Vertex s = 3 + static_cast<Vertex>(i);
    EXPECT_EQ(a.graph.degree(s), 2u);
    for (Vertex q : a.sets[i]) EXPECT_TRUE(a.graph.adjacent(s, q));
  }
  EXPECT_EQ(split_graph_construction(3, 4).graph.order(), 8u);
  auto c = split_graph_construction(2, 4);
  EXPECT_EQ(c.graph.order(), 10u);
  // Clique vertices: 3 clique neighbours plus C(3,1) = 3 pair-vertices; S vertices degree 2.
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(c.graph.degree(v), 6u);
  for (Vertex v = 4; v < 10; ++v) EXPECT_EQ(c.graph.degree(v), 2u);
  EXPECT_EQ(domination_number(c.graph), 3);  // every S vertex needs a clique end; brute force
}

TEST(DomSharpConstruction, SizesAndDomination) {
  auto d = domination_sharp_construction(2, 2, 4);
  EXPECT_EQ(d.U.size(), 12u);
  EXPECT_EQ(d.graph.order(), 18u);
  EXPECT_EQ(domination_number(d.graph), 2);
  auto one = domination_sharp_construction(1, 2, 4);
  EXPECT_EQ(one.U.size(), 6u);
  for (std::size_t i = 0; i < one.U.size(); ++i) EXPECT_EQ(one.u_match[i], one.T[0]);
  for (auto [t, m, r] : std::vector<std::tuple<int, int, int>>{{1, 1, 3}, {2, 2, 5}, {1, 2, 5}, {2, 2, 6}}) {
    auto g = domination_sharp_construction(t, m, r);
    EXPECT_EQ(domination_number(g.graph, 64), t) << t << m << r;
  }
  EXPECT_THROW(domination_sharp_construction(3, 2, 4), Error);  // t > m
}

TEST(GraphPower, Examples) {
  Graph p = graph_power(path_graph(4), 2);
  EXPECT_EQ(edge_set(p), (std::set<Edge>{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}));
  Graph g = random_gnp(12, 0.3, 4);
  EXPECT_TRUE(graph_power(g, 1).same_edges(g));
  EXPECT_TRUE(graph_power(cycle_graph(6), 3).same_edges(complete_graph(6)));
  for (int k = 1; k < 4; ++k) {
    auto a = edge_set(graph_power(g, k)), b = edge_set(graph_power(g, k + 1));
    for (const auto& e : a) EXPECT_TRUE(b.count(e));
  }
}

TEST(ExpandVertex, Examples) {
  auto e = expand_vertex(star_graph(3), 0, 2);
  EXPECT_EQ(e.graph.order(), 5u);
  ASSERT_EQ(e.clique.size(), 2u);
  EXPECT_TRUE(e.graph.adjacent(e.clique[0], e.clique[1]));
  for (Vertex v = 0; v < 5; ++v)
    if (v != e.clique[0] && v != e.clique[1]) {
      EXPECT_TRUE(e.graph.adjacent(v, e.clique[0]));
      EXPECT_TRUE(e.graph.adjacent(v, e.clique[1]));
    }
  auto same = expand_vertex(cycle_graph(5), 2, 1);
  EXPECT_EQ(same.graph.edge_count(), 5u);
  auto p = expand_vertex(path_graph(3), 1, 3);
  EXPECT_EQ(p.graph.order(), 5u);
  EXPECT_EQ(p.graph.edge_count(), 3u + 3u + 3u);  // triangle plus each end to all three
  EXPECT_THROW(expand_vertex(path_graph(3), 7, 2), Error);
}

TEST(Domination, Examples) {
  EXPECT_EQ(dominating_vertex(star_graph(4)), Vertex{0});
  EXPECT_FALSE(dominating_vertex(cycle_graph(5)).has_value());
  EXPECT_EQ(dominating_vertex(complete_graph(4)), Vertex{0});
  EXPECT_EQ(domination_number(path_graph(4)), 2);
  EXPECT_EQ(domination_number(star_graph(5)), 1);
  EXPECT_EQ(domination_number(hypercube(3)), 2);
  EXPECT_THROW(domination_number(path_graph(30)), Error);  // default cap 24
}

TEST(WebbedRecognition, Examples) {
  EXPECT_TRUE(recognize_webbed_tree(complete_graph(5)).has_value());
  Graph wheel = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {1, 4}});
  auto w = recognize_webbed_tree(wheel);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->root, 0u);
  for (std::uint64_t s = 0; s < 10; ++s) EXPECT_TRUE(recognize_webbed_tree(random_tree(9, s)).has_value());
  // Two 4-cycles a-b-c-d and a-e-f-g sharing a, chords b-d and e-g: every block has a
  // dominating vertex, but the graph is not a webbed tree.
  Graph two = Graph::from_edges(7, {{0, 1}, {0, 3}, {0, 4}, {0, 6}, {1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6}});
  EXPECT_FALSE(recognize_webbed_tree(two).has_value());
  EXPECT_FALSE(recognize_webbed_tree_exhaustive(two).has_value());
  EXPECT_FALSE(recognize_webbed_tree(cycle_graph(5)).has_value());
}

TEST(WebbedRecognition, AgreesWithExhaustiveOracle) {
  // Every graph on up to 5 vertices, plus random graphs on 6..8 vertices.
  auto check = [](const Graph& g) {
    auto fast = recognize_webbed_tree(g);
    auto slow = recognize_webbed_tree_exhaustive(g);
    EXPECT_EQ(fast.has_value(), slow.has_value()) << to_text(g);
    if (fast) EXPECT_TRUE(fast->is_spanning_tree_of(g));
  };
  for (int n = 1; n <= 5; ++n) {
    std::vector<Edge> pairs;
    for (Vertex u = 0; u < static_cast<Vertex>(n); ++u)
      for (Vertex v = u + 1; v < static_cast<Vertex>(n); ++v) pairs.push_back({u, v});
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      std::vector<Edge> es;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1) es.push_back(pairs[i]);
      check(Graph::from_edges(n, es));
    }
  }
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    std::size_t n = 6 + seed % 3;
    check(random_gnp(n, 0.35 + 0.1 * (seed % 4), seed));
    check(random_webbed_tree(n, seed).graph);
  }
}

TEST(QCommon, Examples) {
  EXPECT_DOUBLE_EQ(common_neighbourhood_ratio(complete_graph(5)), 0.75);
  EXPECT_TRUE(is_q_common(complete_graph(5), 0.74));
  EXPECT_FALSE(is_q_common(complete_graph(5), 0.76));
  EXPECT_FALSE(is_q_common(star_graph(3), 0.1));
  EXPECT_THROW(common_neighbourhood_ratio(Graph::from_edges(3, {{0, 1}})), Error);
  // Direct double loop on a random graph.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = random_gnp(40, 0.5, seed);
    double best = 1;
    for (Vertex v = 0; v < 40; ++v)
      for (Vertex w = 0; w < 40; ++w) {
        int common = 0;
        for (Vertex x : g.neighbors(v)) common += g.adjacent(x, w);
        best = std::min(best, static_cast<double>(common) / g.degree(v));
      }
    EXPECT_DOUBLE_EQ(common_neighbourhood_ratio(g), best);
    EXPECT_EQ(is_q_common(g, 0.4), best >= 0.4);
  }
}

TEST(Extension, Examples) {
  EXPECT_FALSE(has_r_extension_property(complete_graph(3), 1));
  EXPECT_FALSE(has_r_extension_property(Graph::from_edges(4, {}), 1));
  EXPECT_TRUE(has_r_extension_property(cycle_graph(5), 1));
  // Full enumeration of (T,U) pairs on small random graphs.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = random_gnp(9, 0.5, seed);
    const int n = 9;
    bool all = true;
    for (int t = 0; t < (1 << n) && all; ++t)
      for (int u = 0; u < (1 << n) && all; ++u) {
        if (t & u || __builtin_popcount(t) + __builtin_popcount(u) > 2) continue;
        bool found = false;
        for (Vertex x = 0; x < n && !found; ++x) {
          if ((t | u) >> x & 1) continue;
          bool ok = true;
          for (Vertex y = 0; y < n; ++y) {
            if (t >> y & 1) ok &= g.adjacent(x, y);
            if (u >> y & 1) ok &= !g.adjacent(x, y);
          }
          found = ok;
        }
        all = found;
      }
    EXPECT_EQ(has_r_extension_property(g, 2), all) << seed;
  }
}

TEST(Codes, GreedyCodes) {
  EXPECT_EQ(greedy_code(3, 1).members.size(), 8u);
  EXPECT_EQ(greedy_code(3, 2).members, (std::vector<std::uint64_t>{0b000, 0b011, 0b101, 0b110}));
  for (int d = 2; d <= 12; ++d)
    for (int k = 1; k <= d; ++k) {
      auto c = greedy_code(d, k);
      for (std::size_t i = 0; i < c.members.size(); ++i)
        for (std::size_t j = i + 1; j < c.members.size(); ++j)
          EXPECT_GE(__builtin_popcountll(c.members[i] ^ c.members[j]), k);
      EXPECT_GE(static_cast<double>(c.members.size()), std::ldexp(1.0, d) / ball_size(d, k)) << d << " " << k;
    }
  EXPECT_EQ(ball_size(4, 2), 5u);
  EXPECT_EQ(greedy_code(4, 4).members.size(), 2u);
  EXPECT_THROW(greedy_code(4, 5), Error);
}

TEST(Retractions, SubcubeAndProducts) {
  auto f = subcube_retraction(3, {1, 2});
  EXPECT_TRUE(is_retraction(f));
  EXPECT_EQ(f.image.size(), 4u);
  EXPECT_EQ(f.map[0b111], 0b110u);
  EXPECT_EQ(f.map[0b001], 0b000u);
  for (Vertex v : f.image) EXPECT_EQ(f.map[v], v);

  Graph k2 = path_graph(2);
  auto two = product_retraction({{k2, {0, 1}}, {k2, {0, 1}}});
  EXPECT_TRUE(is_retraction(two.map));
  EXPECT_EQ(two.map.image.size(), 4u);
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(two.map.map[v], v);

  Graph p3 = path_graph(3);
  auto pp = product_retraction({{p3, {0, 1}}, {p3, {1, 2}}});
  EXPECT_EQ(pp.map.host.edge_count(), 12u);
  EXPECT_TRUE(pp.map.host.induced(pp.map.image).same_edges(pp.cube));
  EXPECT_TRUE(pp.cube.same_edges(hypercube(2)));
  // Both clauses on all 12 edges, checked here without is_retraction.
  for (Vertex v : pp.map.image) EXPECT_EQ(pp.map.map[v], v);
  for (auto [u, v] : pp.map.host.edges()) EXPECT_TRUE(pp.map.host.closed_adjacent(pp.map.map[u], pp.map.map[v]));
  EXPECT_THROW(product_retraction({{p3, {0, 2}}}), Error);

  RetractionMap bad = f;
  bad.map[0b111] = 0b000;  // edge 111-110 now maps to 000-110, not an edge
  EXPECT_FALSE(is_retraction(bad));
}
