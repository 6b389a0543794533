#include <algorithm>
#include <map>
#include <numeric>

#include "revspy/matching.hpp"
#include "revspy/rng.hpp"
#include "revspy/spies.hpp"
#include "revspy/structure.hpp"

namespace revspy {

namespace {

std::vector<int> counts_before(const Position& pos, const MoveSet& rev_move) {
  std::vector<int> b = pos.revs;
  for (const auto& f : rev_move.flows) {
    b[f.from] += f.count;
    b[f.to] -= f.count;
  }
  return b;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

AuditNote note(std::string key, bool ok, double value = 0, std::string detail = {}) {
  return AuditNote{std::move(key), ok, value, std::move(detail)};
}

AuditNote conformal_audit(const Position& pos, int m) {
  for (Vertex v = 0; v < pos.revs.size(); ++v)
    if (pos.spies[v] < pos.revs[v] / m)
      return note("conformal", false, v, "vertex " + std::to_string(v) + " under-spied");
  return note("conformal", true);
}

}  // namespace

std::vector<int> stable_local_spies(const std::vector<int>& revs, int total_spies, int m) {
  std::vector<int> s(revs.size(), 0);
  int used = 0;
  for (std::size_t i = 1; i < revs.size(); ++i) used += s[i] = revs[i] / m;
  if (used > total_spies) fail(ErrorCode::LocalGameInfeasible, "local game needs more spies than it has");
  s[0] = total_spies - used;
  return s;
}

MoveSet dominating_response(const Graph& g, const std::vector<Vertex>& verts, const std::vector<int>& before,
                            const std::vector<LocalFlow>& flows, const std::vector<int>& spies, int m) {
  const int k = static_cast<int>(verts.size());
  std::vector<int> after = before;
  std::vector<std::vector<int>> f(k, std::vector<int>(k, 0));
  std::vector<int> out(k, 0);
  for (const auto& fl : flows) {
    if (fl.from == fl.to || fl.count == 0) continue;
    if (!g.adjacent(verts[fl.from], verts[fl.to]))
      fail(ErrorCode::LocalGameInfeasible, "local flow along a non-edge");
    f[fl.from][fl.to] += fl.count;
    out[fl.from] += fl.count;
    after[fl.from] -= fl.count;
    after[fl.to] += fl.count;
  }
  for (int i = 0; i < k; ++i) {
    if (out[i] > before[i])
      fail(ErrorCode::LocalGameInfeasible, "local game at " + std::to_string(verts[0]) + " cannot model " +
                                               std::to_string(out[i]) + " departures from " + std::to_string(verts[i]));
    f[i][i] = before[i] - out[i];
  }
  for (int i = 1; i < k; ++i)
    if (spies[i] != before[i] / m)
      fail(ErrorCode::LocalGameInfeasible, "local game at " + std::to_string(verts[0]) + " is not stable");

  // Right side: old meeting units (one per spy at i > 0), then the reserve at verts[0].
  std::vector<int> right_at;
  for (int i = 1; i < k; ++i) right_at.insert(right_at.end(), spies[i], i);
  const int reserve_from = static_cast<int>(right_at.size());
  right_at.insert(right_at.end(), spies[0], 0);
  std::vector<int> left_at;
  for (int j = 1; j < k; ++j) left_at.insert(left_at.end(), after[j] / m, j);

  auto inst = BipartiteInstance::make(static_cast<int>(left_at.size()), static_cast<int>(right_at.size()));
  for (std::size_t l = 0; l < left_at.size(); ++l) {
    int j = left_at[l];
    // Staying spies first, then other old units, then the reserve.
    for (std::size_t q = 0; q < static_cast<std::size_t>(reserve_from); ++q)
      if (right_at[q] == j && f[j][j] > 0) inst.add(static_cast<int>(l), static_cast<int>(q));
    for (std::size_t q = 0; q < static_cast<std::size_t>(reserve_from); ++q)
      if (right_at[q] != j && f[right_at[q]][j] > 0) inst.add(static_cast<int>(l), static_cast<int>(q));
    for (std::size_t q = reserve_from; q < right_at.size(); ++q) inst.add(static_cast<int>(l), static_cast<int>(q));
  }
  auto match = max_matching(inst);
  if (matching_size(match) != static_cast<int>(left_at.size())) {
    auto viol = hall_violator(inst);
    fail(ErrorCode::NoCover, "local game at " + std::to_string(verts[0]) + ": Hall violated by new meeting units {" +
                                 join(viol ? *viol : std::vector<int>{}) + "}");
  }
  std::vector<char> used(right_at.size(), 0);
  MoveSet mv;
  for (std::size_t l = 0; l < left_at.size(); ++l) {
    used[match[l]] = 1;
    mv.add(verts[right_at[match[l]]], verts[left_at[l]]);
  }
  for (std::size_t q = 0; q < right_at.size(); ++q)
    if (!used[q]) mv.add(verts[right_at[q]], verts[0]);
  return mv.normalized();
}

std::vector<int> webbed_targets(const RootedTree& tree, const std::vector<int>& revs, int m) {
  const std::size_t n = revs.size();
  std::vector<int> w(revs.begin(), revs.end());
  for (auto it = tree.bfs_order.rbegin(); it != tree.bfs_order.rend(); ++it)
    if (tree.parent[*it] >= 0) w[tree.parent[*it]] += w[*it];
  std::vector<int> s(n);
  for (Vertex v = 0; v < n; ++v) {
    s[v] = w[v] / m;
    for (Vertex x : tree.children[v]) s[v] -= w[x] / m;
  }
  return s;
}

// ---- simple spies -------------------------------------------------------------------------

namespace {

class TrivialFollower : public SpyStrategy {
 public:
  explicit TrivialFollower(const GameSpec& spec) : spec_(spec) {}
  std::string id() const override { return "spy.trivial-follower"; }
  std::vector<int> place(const Position& pos) override {
    std::vector<int> s(spec_.n(), 0);
    int left = spec_.s;
    for (Vertex v = 0; v < spec_.n() && left > 0; ++v) {
      int take = std::min(left, pos.revs[v]);
      s[v] += take;
      left -= take;
    }
    s[0] += left;  // more spies than revolutionaries: park the rest
    return s;
  }
  MoveSet respond(const Position& pos, const MoveSet& rev_move) override {
    // Each followed revolutionary is some piece of the flow leaving its vertex.
    auto before = counts_before(pos, rev_move);
    std::vector<std::vector<std::pair<Vertex, int>>> outs(spec_.n());
    std::vector<int> out_total(spec_.n(), 0);
    for (const auto& f : rev_move.flows) {
      outs[f.from].emplace_back(f.to, f.count);
      out_total[f.from] += f.count;
    }
    MoveSet mv;
    for (Vertex v = 0; v < spec_.n(); ++v) {
      int followers = std::min(pos.spies[v], before[v]);
      // Stay with the stayers first, then follow leavers.
      int stay = std::min(followers, before[v] - out_total[v]);
      followers -= stay;
      for (auto [to, c] : outs[v]) {
        int take = std::min(followers, c);
        if (take > 0) mv.add(v, to, take);
        followers -= take;
      }
    }
    return mv.normalized();
  }
  std::vector<AuditNote> audit(const Position& pos) override { return {conformal_audit(pos, spec_.m)}; }
  std::unique_ptr<SpyStrategy> clone() const override { return std::make_unique<TrivialFollower>(*this); }

 private:
  GameSpec spec_;
};

class RandomSpy : public SpyStrategy {
 public:
  explicit RandomSpy(const GameSpec& spec) : spec_(spec) {}
  std::string id() const override { return "spy.random"; }
  void reseed(std::uint64_t seed) override { rng_ = Rng(mix_seed(seed, 11)); }
  std::vector<int> place(const Position&) override {
    std::vector<int> s(spec_.n(), 0);
    for (int i = 0; i < spec_.s; ++i) ++s[rng_.below(spec_.n())];
    return s;
  }
  MoveSet respond(const Position& pos, const MoveSet&) override {
    MoveSet mv;
    for (Vertex v = 0; v < spec_.n(); ++v)
      for (int i = 0; i < pos.spies[v]; ++i) {
        auto nb = spec_.g().neighbors(v);
        std::uint64_t pick = rng_.below(nb.size() + 1);
        mv.add(v, pick == nb.size() ? v : nb[pick]);
      }
    return mv.normalized();
  }
  std::unique_ptr<SpyStrategy> clone() const override { return std::make_unique<RandomSpy>(*this); }

 private:
  GameSpec spec_;
  Rng rng_{0};
};

// Cover meetings with the fewest movers; idle spies hop onto the fullest
// uncovered vertex within reach.
class CoverSpy : public SpyStrategy {
 public:
  explicit CoverSpy(const GameSpec& spec) : spec_(spec) {}
  std::string id() const override { return "spy.cover"; }
  std::vector<int> place(const Position& pos) override {
    std::vector<Vertex> order(spec_.n());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return pos.revs[a] > pos.revs[b]; });
    std::vector<int> s(spec_.n(), 0);
    for (int i = 0; i < spec_.s; ++i) ++s[order[i % order.size()]];
    return s;
  }
  MoveSet respond(const Position& pos, const MoveSet&) override {
    const Graph& g = spec_.g();
    auto meetings = pos.meetings(spec_.m);
    auto spies = pos.spy_list();
    std::vector<char> busy(spies.size(), 0);
    MoveSet mv;
    std::vector<int> now(spec_.n(), 0);
    if (coverable(meetings, spies, g)) {
      auto cover = min_movers_cover(meetings, spies, g);
      for (std::size_t i = 0; i < cover.meetings.size(); ++i) {
        busy[cover.spy_of[i]] = 1;
        mv.add(spies[cover.spy_of[i]], cover.meetings[i]);
        ++now[cover.meetings[i]];
      }
    }
    for (std::size_t i = 0; i < spies.size(); ++i) {
      if (busy[i]) continue;
      Vertex best = spies[i];
      int best_val = now[best] ? -1 : pos.revs[best];
      for (Vertex y : g.neighbors(spies[i])) {
        int val = now[y] ? -1 : pos.revs[y];
        if (val > best_val) best = y, best_val = val;
      }
      ++now[best];
      mv.add(spies[i], best);
    }
    return mv.normalized();
  }
  std::unique_ptr<SpyStrategy> clone() const override { return std::make_unique<CoverSpy>(*this); }

 private:
  GameSpec spec_;
};

// ---- dominating vertex ---------------------------------------------------------------------

class DominatingVertexSpy : public SpyStrategy {
 public:
  DominatingVertexSpy(const GameSpec& spec, Vertex u) : spec_(spec), u_(u) {
    verts_.push_back(u);
    for (Vertex v = 0; v < spec.n(); ++v)
      if (v != u) verts_.push_back(v);
  }
  std::string id() const override { return "spy.dominating-vertex"; }
  std::vector<int> place(const Position& pos) override { return to_global(stable_local_spies(local(pos.revs), spec_.s, spec_.m)); }
  MoveSet respond(const Position& pos, const MoveSet& rev_move) override {
    auto before = local(counts_before(pos, rev_move));
    std::vector<int> idx(spec_.n());
    for (std::size_t i = 0; i < verts_.size(); ++i) idx[verts_[i]] = static_cast<int>(i);
    std::vector<LocalFlow> flows;
    for (const auto& f : rev_move.flows) flows.push_back({idx[f.from], idx[f.to], f.count});
    return dominating_response(spec_.g(), verts_, before, flows, local(pos.spies), spec_.m);
  }
  std::vector<AuditNote> audit(const Position& pos) override {
    bool ok = true;
    for (Vertex v = 0; v < spec_.n(); ++v)
      if (v != u_ && pos.spies[v] != pos.revs[v] / spec_.m) ok = false;
    return {note("dominating.stable", ok), conformal_audit(pos, spec_.m)};
  }
  std::unique_ptr<SpyStrategy> clone() const override { return std::make_unique<DominatingVertexSpy>(*this); }

 private:
  std::vector<int> local(const std::vector<int>& global) const {
    std::vector<int> l;
    for (Vertex v : verts_) l.push_back(global[v]);
    return l;
  }
  std::vector<int> to_global(const std::vector<int>& l) const {
    std::vector<int> g(spec_.n());
    for (std::size_t i = 0; i < verts_.size(); ++i) g[verts_[i]] = l[i];
    return g;
  }
  GameSpec spec_;
  Vertex u_;
  std::vector<Vertex> verts_;
};

// ---- webbed tree ---------------------------------------------------------------------------

class WebbedTreeSpy : public SpyStrategy {
 public:
  WebbedTreeSpy(const GameSpec& spec, RootedTree tree) : spec_(spec), tree_(std::move(tree)) {}
  std::string id() const override { return "spy.webbed-tree"; }
  std::vector<int> place(const Position& pos) override { return webbed_targets(tree_, pos.revs, spec_.m); }

  MoveSet respond(const Position& pos, const MoveSet& rev_move) override {
    const int m = spec_.m;
    const std::size_t n = spec_.n();
    auto rb = counts_before(pos, rev_move);
    std::vector<int> w = subtree_sums(rb);
    std::vector<int> down(n, 0);  // revolutionaries entering D*(v), necessarily from v
    for (const auto& f : rev_move.flows)
      if (f.from != f.to && tree_.parent[f.to] == static_cast<int>(f.from)) down[f.from] += f.count;
    std::vector<int> wstar(n), s_hat(n), s_chk(n), r_hat(n), r_chk(n);
    for (Vertex v = 0; v < n; ++v) {
      int child_w = 0, child_fl = 0;
      for (Vertex x : tree_.children[v]) child_w += w[x], child_fl += w[x] / m;
      wstar[v] = child_w + down[v];
      s_hat[v] = w[v] / m - wstar[v] / m;
      s_chk[v] = wstar[v] / m - child_fl;
      r_hat[v] = w[v] - m * (wstar[v] / m);
      r_chk[v] = wstar[v] - child_w;
      if (s_hat[v] + s_chk[v] != pos.spies[v])
        fail(ErrorCode::LocalGameInfeasible, "spy split at " + std::to_string(v) + " does not match the spies present");
    }
    // Each real move belongs to exactly one local game G(p).
    std::vector<std::vector<LocalFlow>> local_flows(n);
    std::vector<int> slot(n, 0);  // index of v inside G(parent(v)); 0 inside G(v)
    for (Vertex v = 0; v < n; ++v)
      for (std::size_t i = 0; i < tree_.children[v].size(); ++i) slot[tree_.children[v][i]] = static_cast<int>(i) + 1;
    for (const auto& f : rev_move.flows) {
      if (f.from == f.to) continue;
      Vertex p;
      int a, b;
      if (tree_.parent[f.to] == static_cast<int>(f.from)) p = f.from, a = 0, b = slot[f.to];
      else if (tree_.parent[f.from] == static_cast<int>(f.to)) p = f.to, a = slot[f.from], b = 0;
      else p = static_cast<Vertex>(tree_.parent[f.from]), a = slot[f.from], b = slot[f.to];
      local_flows[p].push_back({a, b, f.count});
    }
    MoveSet mv;
    for (Vertex v = 0; v < n; ++v) {
      if (tree_.children[v].empty()) continue;
      std::vector<Vertex> verts{v};
      std::vector<int> before{r_chk[v]}, spies{s_chk[v]};
      for (Vertex x : tree_.children[v]) {
        verts.push_back(x);
        before.push_back(r_hat[x]);
        spies.push_back(s_hat[x]);
      }
      auto local = dominating_response(spec_.g(), verts, before, local_flows[v], spies, m);
      mv.flows.insert(mv.flows.end(), local.flows.begin(), local.flows.end());
    }
    return mv.normalized();  // the root's upward share stays put
  }

  std::vector<AuditNote> audit(const Position& pos) override {
    auto target = webbed_targets(tree_, pos.revs, spec_.m);
    bool inv = target == pos.spies;
    auto w = subtree_sums(pos.revs);
    bool tel = true;
    for (Vertex v = 0; v < spec_.n(); ++v) {
      int sum = 0;
      for (Vertex u : tree_.descendants(v)) sum += pos.spies[u];
      if (sum != w[v] / spec_.m) tel = false;
    }
    return {note("webbed.invariant", inv), note("webbed.telescoping", tel), conformal_audit(pos, spec_.m)};
  }
  std::unique_ptr<SpyStrategy> clone() const override { return std::make_unique<WebbedTreeSpy>(*this); }

 private:
  std::vector<int> subtree_sums(const std::vector<int>& revs) const {
    std::vector<int> w = revs;
    for (auto it = tree_.bfs_order.rbegin(); it != tree_.bfs_order.rend(); ++it)
      if (tree_.parent[*it] >= 0) w[tree_.parent[*it]] += w[*it];
    return w;
  }
  GameSpec spec_;
  RootedTree tree_;
};

// ---- dominating set: one squad per dominating vertex ------------------------------------------

class DominationSetSpy : public SpyStrategy {
 public:
  DominationSetSpy(const GameSpec& spec, std::vector<Vertex> dom) : spec_(spec), dom_(std::move(dom)) {
    const Graph& g = spec.g();
    per_squad_ = spec.r / spec.m;
    for (Vertex u : dom_) {
      Squad sq;
      sq.verts.push_back(u);
      for (Vertex v : g.neighbors(u)) sq.verts.push_back(v);
      sq.index.assign(spec.n(), -1);
      for (std::size_t i = 0; i < sq.verts.size(); ++i) sq.index[sq.verts[i]] = static_cast<int>(i);
      squads_.push_back(std::move(sq));
    }
  }
  std::string id() const override { return "spy.domination-set"; }

  std::vector<int> place(const Position& pos) override {
    std::vector<int> total(spec_.n(), 0);
    for (auto& sq : squads_) {
      sq.spies = stable_local_spies(imagined(sq, pos.revs), per_squad_, spec_.m);
      for (std::size_t i = 0; i < sq.verts.size(); ++i) total[sq.verts[i]] += sq.spies[i];
    }
    // Spies beyond the squads' needs wait on the first dominating vertex.
    total[dom_[0]] += spec_.s - per_squad_ * static_cast<int>(squads_.size());
    return total;
  }

  MoveSet respond(const Position& pos, const MoveSet& rev_move) override {
    auto rb = counts_before(pos, rev_move);
    MoveSet mv;
    for (auto& sq : squads_) {
      auto before = imagined(sq, rb);
      std::vector<LocalFlow> flows;
      for (const auto& f : rev_move.flows) {
        if (f.from == f.to) continue;
        int a = sq.index[f.from], b = sq.index[f.to];
        if (a < 0 && b < 0) continue;
        // Arrivals from outside come via u; departures return to u.
        flows.push_back({a < 0 ? 0 : a, b < 0 ? 0 : b, f.count});
      }
      auto local = dominating_response(spec_.g(), sq.verts, before, flows, sq.spies, spec_.m);
      // Track the squad's own spies.
      std::vector<int> next = sq.spies;
      for (const auto& f : local.flows) {
        next[sq.index[f.from]] -= f.count;
        next[sq.index[f.to]] += f.count;
      }
      sq.spies = next;
      mv.flows.insert(mv.flows.end(), local.flows.begin(), local.flows.end());
    }
    return mv.normalized();
  }

  std::vector<AuditNote> audit(const Position& pos) override {
    bool ok = true;
    for (const auto& sq : squads_) {
      auto im = imagined(sq, pos.revs);
      for (std::size_t i = 1; i < sq.verts.size(); ++i)
        if (sq.spies[i] != im[i] / spec_.m) ok = false;
    }
    return {note("domset.squads_stable", ok)};
  }
  std::unique_ptr<SpyStrategy> clone() const override { return std::make_unique<DominationSetSpy>(*this); }

 private:
  struct Squad {
    std::vector<Vertex> verts;  // u first, then N(u)
    std::vector<int> index;     // global -> local, -1 outside
    std::vector<int> spies;     // local counts
  };
  std::vector<int> imagined(const Squad& sq, const std::vector<int>& revs) const {
    std::vector<int> l(sq.verts.size());
    int inside = 0;
    for (std::size_t i = 0; i < sq.verts.size(); ++i) inside += l[i] = revs[sq.verts[i]];
    l[0] += spec_.r - inside;  // absent revolutionaries imagined at u
    return l;
  }
  GameSpec spec_;
  std::vector<Vertex> dom_;
  int per_squad_ = 0;
  std::vector<Squad> squads_;
};

}  // namespace

std::unique_ptr<SpyStrategy> make_trivial_follower_spy(const GameSpec& spec) {
  return std::make_unique<TrivialFollower>(spec);
}
std::unique_ptr<SpyStrategy> make_random_spy(const GameSpec& spec) { return std::make_unique<RandomSpy>(spec); }
std::unique_ptr<SpyStrategy> make_cover_spy(const GameSpec& spec) { return std::make_unique<CoverSpy>(spec); }

std::unique_ptr<SpyStrategy> make_dominating_vertex_spy(const GameSpec& spec, std::optional<Vertex> u) {
  if (!u) u = dominating_vertex(spec.g());
  if (!u) fail(ErrorCode::StrategyMismatch, "graph has no dominating vertex");
  if (spec.g().degree(*u) + 1 != spec.n()) fail(ErrorCode::StrategyMismatch, "given vertex does not dominate");
  if (spec.s < spec.r / spec.m) fail(ErrorCode::StrategyMismatch, "needs at least floor(r/m) spies");
  return std::make_unique<DominatingVertexSpy>(spec, *u);
}

std::unique_ptr<SpyStrategy> make_webbed_tree_spy(const GameSpec& spec, std::optional<RootedTree> tree) {
  if (!tree) tree = recognize_webbed_tree(spec.g());
  if (!tree) fail(ErrorCode::StrategyMismatch, "graph is not a webbed tree");
  if (!tree->is_spanning_tree_of(spec.g())) fail(ErrorCode::StrategyMismatch, "tree does not span the graph");
  for (const auto& [a, b] : spec.g().edges())
    if (tree->parent[a] != static_cast<int>(b) && tree->parent[b] != static_cast<int>(a) &&
        tree->parent[a] != tree->parent[b])
      fail(ErrorCode::StrategyMismatch, "non-tree edge joins non-siblings");
  if (spec.s != spec.r / spec.m) fail(ErrorCode::StrategyMismatch, "webbed-tree spies play with exactly floor(r/m) spies");
  return std::make_unique<WebbedTreeSpy>(spec, std::move(*tree));
}

std::unique_ptr<SpyStrategy> make_domination_set_spy(const GameSpec& spec, std::optional<std::vector<Vertex>> dom) {
  const Graph& g = spec.g();
  if (!dom) dom = minimum_dominating_set(g, 64).members;
  std::vector<char> hit(spec.n(), 0);
  for (Vertex u : *dom) {
    if (!g.contains(u)) fail(ErrorCode::InvalidArgument, "dominating set vertex out of range");
    hit[u] = 1;
    for (Vertex v : g.neighbors(u)) hit[v] = 1;
  }
  if (dom->empty() || std::count(hit.begin(), hit.end(), 0) > 0)
    fail(ErrorCode::StrategyMismatch, "set does not dominate the graph");
  if (spec.s < static_cast<int>(dom->size()) * (spec.r / spec.m))
    fail(ErrorCode::StrategyMismatch, "needs |D| * floor(r/m) spies");
  return std::make_unique<DominationSetSpy>(spec, std::move(*dom));
}

}  // namespace revspy
