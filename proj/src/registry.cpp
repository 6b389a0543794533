#include <functional>
#include <map>

#include "revspy/registry.hpp"
#include "revspy/revs.hpp"
#include "revspy/solver.hpp"
#include "revspy/spies.hpp"
#include "revspy/structure.hpp"

namespace revspy {

namespace {

// The split and domination constructions are recovered from the graph by size.
SplitGraph find_split(const GameSpec& spec) {
  for (int r = spec.m; r <= 40; ++r) {
    std::uint64_t n = r + binomial(r, spec.m);
    if (n > spec.n()) break;
    if (n != spec.n()) continue;
    auto sg = split_graph_construction(spec.m, r);
    if (sg.graph.same_edges(spec.g())) return sg;
  }
  fail(ErrorCode::StrategyMismatch, "graph is not a split construction for m = " + std::to_string(spec.m));
}

DomSharpGraph find_domsharp(const GameSpec& spec) {
  for (int t = 1; t <= spec.m; ++t)
    for (int r = 2 * spec.m; r <= 40; ++r) {
      std::uint64_t n = t + r + t * binomial(r, spec.m);
      if (n > spec.n()) break;
      if (n != spec.n()) continue;
      auto dg = domination_sharp_construction(t, spec.m, r);
      if (dg.graph.same_edges(spec.g())) return dg;
    }
  fail(ErrorCode::StrategyMismatch, "graph is not a domination construction for m = " + std::to_string(spec.m));
}

struct RevDef {
  std::string summary;
  std::function<std::unique_ptr<RevStrategy>(const GameSpec&)> make;
};
struct SpyDef {
  std::string summary;
  std::function<std::unique_ptr<SpyStrategy>(const GameSpec&)> make;
};

const std::map<std::string, RevDef>& rev_table() {
  static const std::map<std::string, RevDef> t{
      {"rev.random", {"uniform random placement and moves", make_random_rev}},
      {"rev.swarm-best", {"multipartite: swarm with the best margin each round", make_best_swarm_rev}},
      {"rev.alternating-swarm", {"multipartite: swarm the parts in turn", make_alternating_swarm_rev}},
      {"rev.bipartite-m2", {"complete bipartite, m = 2: cross-over then swarm", make_bipartite_attack_m2}},
      {"rev.bipartite-m3", {"complete bipartite, m = 3: symmetric or asymmetric line", make_bipartite_attack_m3}},
      {"rev.cells-m2", {"complete bipartite, even m: cells of m/2 play the m = 2 attack",
                        [](const GameSpec& s) { return make_cell_grouping_attack(s, 2); }}},
      {"rev.cells-m3", {"complete bipartite: cells of ceil(m/3) play the m = 3 attack",
                        [](const GameSpec& s) { return make_cell_grouping_attack(s, 3); }}},
      {"rev.kpartite-lower", {"complete k-partite: distinct per part, then the best swarm", make_kpartite_lower_attack}},
      {"rev.hypercube-m2", {"hypercube, m = 2: weight-1 start, pair threats", make_hypercube_attack_m2}},
      {"rev.hypercube-replicated", {"hypercube, m = 2, r > d: groups at code centers", make_replicated_hypercube_attack}},
      {"rev.hypercube-general", {"hypercube: avoiding-vertex walk", make_hypercube_attack_general}},
      {"rev.split", {"split construction: one-round attack",
                     [](const GameSpec& s) { return make_split_attack(s, find_split(s)); }}},
      {"rev.domsharp", {"domination construction: one-round attack",
                        [](const GameSpec& s) { return make_domsharp_attack(s, find_domsharp(s)); }}},
      {"rev.extension", {"extension-property graphs: one-round attack", make_extension_attack}},
      {"rev.solver", {"optimal play from a full solve (tiny graphs)", make_solver_rev}},
  };
  return t;
}

const std::map<std::string, SpyDef>& spy_table() {
  static const std::map<std::string, SpyDef> t{
      {"spy.trivial-follower", {"r-m+1 spies shadow the revolutionaries", make_trivial_follower_spy}},
      {"spy.random", {"uniform random placement and moves", make_random_spy}},
      {"spy.cover", {"cover every meeting, park the rest near revolutionaries", make_cover_spy}},
      {"spy.dominating-vertex", {"graphs with a dominating vertex, floor(r/m) spies",
                                 [](const GameSpec& s) { return make_dominating_vertex_spy(s); }}},
      {"spy.webbed-tree", {"webbed trees, floor(r/m) spies", [](const GameSpec& s) { return make_webbed_tree_spy(s); }}},
      {"spy.domination-set", {"one squad per dominating vertex",
                              [](const GameSpec& s) { return make_domination_set_spy(s); }}},
      {"spy.qcommon", {"q-common graphs: cover then randomize", [](const GameSpec& s) { return make_qcommon_spy(s); }}},
      {"spy.kpartite", {"complete k-partite: cover then balance", make_kpartite_spy}},
      {"spy.bipartite-m2", {"complete bipartite, m = 2: greedy migration", make_bipartite_spy_m2}},
      {"spy.bipartite-m3", {"complete bipartite, m = 3: greedy migration", make_bipartite_spy_m3}},
      {"spy.bipartite-general", {"complete bipartite, general m: greedy migration", make_bipartite_spy_general}},
      {"spy.solver", {"optimal play from a full solve (tiny graphs)", make_solver_spy}},
  };
  return t;
}

}  // namespace

std::vector<StrategyEntry> list_strategies() {
  std::vector<StrategyEntry> out;
  for (const auto& [id, d] : rev_table()) out.push_back({id, Side::Revolutionaries, d.summary});
  for (const auto& [id, d] : spy_table()) out.push_back({id, Side::Spies, d.summary});
  return out;
}

std::unique_ptr<RevStrategy> make_rev(const std::string& id, const GameSpec& spec) {
  auto it = rev_table().find(id);
  if (it == rev_table().end()) fail(ErrorCode::NotFound, "unknown revolutionary strategy '" + id + "'");
  return it->second.make(spec);
}

std::unique_ptr<SpyStrategy> make_spy(const std::string& id, const GameSpec& spec) {
  auto it = spy_table().find(id);
  if (it == spy_table().end()) fail(ErrorCode::NotFound, "unknown spy strategy '" + id + "'");
  return it->second.make(spec);
}

std::optional<int> strategy_spy_count(const std::string& id, const GameSpec& spec) {
  const int m = spec.m, r = spec.r;
  const Graph& g = spec.g();
  if (id == "spy.trivial-follower") return r - m + 1;
  if (id == "spy.dominating-vertex" || id == "spy.webbed-tree") return r / m;
  if (id == "spy.domination-set") return minimum_dominating_set(g, 64).size * (r / m);
  if (id == "spy.kpartite" && g.has_parts()) return kpartite_spy_count(g.part_count(), m, r);
  if (id == "spy.bipartite-m2" && m == 2) return bipartite_spy_count(2, r);
  if (id == "spy.bipartite-m3" && m == 3) return bipartite_spy_count(3, r);
  if (id == "spy.bipartite-general") return bipartite_spy_count(m, r);
  if (id == "spy.qcommon") {
    double q = common_neighbourhood_ratio(g);
    if (q > 0) return qcommon_spy_count(g.order(), q, m, r, 1.0);
  }
  return std::nullopt;
}

int attack_horizon(const std::string& id, const GameSpec& spec) {
  if (id == "rev.kpartite-lower" || id == "rev.split" || id == "rev.domsharp" || id == "rev.extension" ||
      id == "rev.swarm-best")
    return 1;
  if (id == "rev.bipartite-m2" || id == "rev.bipartite-m3" || id == "rev.cells-m2" || id == "rev.cells-m3" ||
      id == "rev.hypercube-m2" || id == "rev.hypercube-replicated")
    return 2;
  if (id == "rev.hypercube-general") return spec.m - 1;
  return 0;
}

}  // namespace revspy
