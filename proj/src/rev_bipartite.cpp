#include <algorithm>

#include "revspy/multipartite.hpp"
#include "revspy/revs.hpp"
#include "revspy/rng.hpp"
#include "revspy/spies.hpp"

namespace revspy {

namespace {

std::vector<std::vector<Vertex>> members(const Graph& g) {
  if (!g.has_parts()) fail(ErrorCode::StrategyMismatch, "graph declares no parts");
  return g.part_members();
}

// Distinct vertices, dealt round-robin over the parts.
std::vector<int> balanced_placement(const Graph& g, int r) {
  auto parts = members(g);
  std::vector<int> out(g.order(), 0);
  std::vector<std::size_t> next(parts.size(), 0);
  for (int i = 0; i < r; ++i) {
    auto& p = parts[i % parts.size()];
    std::size_t& k = next[i % parts.size()];
    if (k >= p.size()) fail(ErrorCode::StrategyMismatch, "part too small for a distinct placement");
    ++out[p[k++]];
  }
  return out;
}

SwarmPlan best_swarm(const Graph& g, const Position& pos, int m, const std::vector<int>* pinned = nullptr) {
  SwarmPlan best;
  bool have = false;
  for (int p = 0; p < g.part_count(); ++p) {
    auto plan = swarm_plan(g, pos.revs, pos.spies, p, m, pinned);
    if (!have || plan.margin() > best.margin() ||
        (plan.margin() == best.margin() && plan.new_meetings > best.new_meetings)) {
      best = plan;
      have = true;
    }
  }
  return best;
}

// `count` revolutionaries leave `from_part` (spy-covered vertices first) for distinct
// empty vertices of `to_part` (spy-free first).
MoveSet cross_over(const Graph& g, const Position& pos, int from_part, int to_part, int count) {
  const auto& part = g.parts();
  std::vector<Vertex> src, dst;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (part[v] == from_part)
      for (int c = 0; c < pos.revs[v]; ++c) src.push_back(v);
    if (part[v] == to_part && pos.revs[v] == 0) dst.push_back(v);
  }
  std::stable_sort(src.begin(), src.end(), [&](Vertex a, Vertex b) { return (pos.spies[a] > 0) > (pos.spies[b] > 0); });
  std::stable_sort(dst.begin(), dst.end(), [&](Vertex a, Vertex b) { return (pos.spies[a] == 0) > (pos.spies[b] == 0); });
  count = std::min({count, static_cast<int>(src.size()), static_cast<int>(dst.size())});
  MoveSet mv;
  for (int i = 0; i < count; ++i) mv.add(src[i], dst[i]);
  return mv.normalized();
}

// ---- generic ----------------------------------------------------------------------------------

class RandomRev : public RevStrategy {
 public:
  explicit RandomRev(const GameSpec& spec) : spec_(spec), rng_(mix_seed(0, 5)) {}
  std::string id() const override { return "rev.random"; }
  void reseed(std::uint64_t seed) override { rng_ = Rng(mix_seed(seed, 5)); }
  std::vector<int> place() override {
    std::vector<int> out(spec_.n(), 0);
    for (int i = 0; i < spec_.r; ++i) ++out[rng_.below(spec_.n())];
    return out;
  }
  MoveSet move(const Position& pos) override {
    MoveSet mv;
    for (Vertex v : pos.rev_list()) {
      auto nb = spec_.g().neighbors(v);
      std::uint64_t k = rng_.below(nb.size() + 1);
      mv.add(v, k == nb.size() ? v : nb[k]);
    }
    return mv.normalized();
  }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<RandomRev>(*this); }

 private:
  GameSpec spec_;
  Rng rng_;
};

class SwarmRev : public RevStrategy {
 public:
  SwarmRev(const GameSpec& spec, bool alternate) : spec_(spec), alternate_(alternate) {}
  std::string id() const override { return alternate_ ? "rev.alternating-swarm" : "rev.swarm-best"; }
  std::vector<int> place() override { return balanced_placement(spec_.g(), spec_.r); }
  MoveSet move(const Position& pos) override {
    const auto& g = spec_.g();
    if (!alternate_) return best_swarm(g, pos, spec_.m).move;
    return swarm_plan(g, pos.revs, pos.spies, (pos.round - 1) % g.part_count(), spec_.m).move;
  }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<SwarmRev>(*this); }

 private:
  GameSpec spec_;
  bool alternate_;
};

class GroupedRev : public RevStrategy {
 public:
  GroupedRev(const GameSpec& spec, int factor, int inner_m, const RevFactory& inner)
      : spec_(spec), factor_(factor), idle_(spec.n(), 0) {
    inner_spec_ = GameSpec(spec.graph, inner_m, spec.r / factor, spec.s);
    inner_ = inner(inner_spec_);
  }
  GroupedRev(const GroupedRev& o)
      : spec_(o.spec_), inner_spec_(o.inner_spec_), factor_(o.factor_), idle_(o.idle_), inner_(o.inner_->clone()) {}
  std::string id() const override { return inner_->id() + "@cells" + std::to_string(factor_); }
  void reseed(std::uint64_t seed) override { inner_->reseed(seed); }

  std::vector<int> place() override {
    auto cells = inner_->place();
    std::vector<int> out(spec_.n(), 0);
    for (Vertex v = 0; v < spec_.n(); ++v) out[v] = cells[v] * factor_;
    int left = spec_.r - inner_spec_.r * factor_;
    // Idle revolutionaries sit apart, on the last vertices not used by the cells.
    for (Vertex v = static_cast<Vertex>(spec_.n()); left > 0 && v-- > 0;)
      if (out[v] == 0) ++idle_[v], ++out[v], --left;
    if (left > 0) idle_[spec_.n() - 1] += left, out[spec_.n() - 1] += left;
    return out;
  }

  MoveSet move(const Position& pos) override {
    auto inner_pos = project(pos);
    MoveSet mv;
    for (const auto& f : inner_->move(inner_pos).normalized().flows) mv.add(f.from, f.to, f.count * factor_);
    return mv;
  }
  std::vector<AuditNote> audit(const Position& pos) override { return inner_->audit(project(pos)); }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<GroupedRev>(*this); }

 private:
  Position project(const Position& pos) const {
    Position p = pos;
    for (Vertex v = 0; v < spec_.n(); ++v) {
      int k = pos.revs[v] - idle_[v];
      if (k < 0 || k % factor_ != 0) fail(ErrorCode::InvalidArgument, "cells were split apart");
      p.revs[v] = k / factor_;
    }
    return p;
  }

  GameSpec spec_, inner_spec_;
  int factor_;
  std::vector<int> idle_;
  std::unique_ptr<RevStrategy> inner_;
};

// ---- bipartite attacks -------------------------------------------------------------------------

class BipartiteM2Attack : public RevStrategy {
 public:
  explicit BipartiteM2Attack(const GameSpec& spec) : spec_(spec) {}
  std::string id() const override { return "rev.bipartite-m2"; }
  std::vector<int> place() override {
    std::vector<int> out(spec_.n(), 0);
    auto x1 = members(spec_.g())[0];
    for (int i = 0; i < spec_.r; ++i) out[x1[i]] = 1;
    return out;
  }
  MoveSet move(const Position& pos) override {
    auto plan = best_swarm(spec_.g(), pos, spec_.m);
    if (plan.wins() || pos.round > 1) return plan.move;
    return cross_over(spec_.g(), pos, 0, 1, spec_.r / 2);
  }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<BipartiteM2Attack>(*this); }

 private:
  GameSpec spec_;
};

class BipartiteM3Attack : public RevStrategy {
 public:
  explicit BipartiteM3Attack(const GameSpec& spec) : spec_(spec) {}
  std::string id() const override { return "rev.bipartite-m3"; }
  std::vector<int> place() override {
    std::vector<int> out(spec_.n(), 0);
    auto parts = members(spec_.g());
    const int r = spec_.r;
    if (r % 4 == 0) {
      for (int i = 0; i < r / 2; ++i) out[parts[0][i]] = out[parts[1][i]] = 1;
    } else {
      for (int i = 0; i < r; ++i) out[parts[0][i]] = 1;
    }
    return out;
  }
  MoveSet move(const Position& pos) override {
    auto plan = best_swarm(spec_.g(), pos, spec_.m);
    const int r = spec_.r;
    if (plan.wins() || pos.round > 1 || r % 4 == 0) return plan.move;
    // Asymmetric line: x spies began in X_2; p = 2(r-x-j)/3 cross, j = (r-x) mod 3.
    int x = 0;
    for (Vertex v = 0; v < spec_.n(); ++v)
      if (spec_.g().parts()[v] == 1) x += pos.spies[v];
    x_ = x;
    int j = (r - x) % 3;
    return cross_over(spec_.g(), pos, 0, 1, 2 * (r - x - j) / 3);
  }
  std::vector<AuditNote> audit(const Position&) override {
    if (x_ < 0) return {};
    AuditNote a{"attack.m3.initial_x2_spies", true, static_cast<double>(x_), ""};
    x_ = -1;
    return {a};
  }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<BipartiteM3Attack>(*this); }

 private:
  GameSpec spec_;
  int x_ = -1;
};

class KPartiteLowerAttack : public RevStrategy {
 public:
  explicit KPartiteLowerAttack(const GameSpec& spec) : spec_(spec), pinned_(spec.n(), 0) {}
  std::string id() const override { return "rev.kpartite-lower"; }
  std::vector<int> place() override {
    auto parts = members(spec_.g());
    const int k = static_cast<int>(parts.size()), t = spec_.r / k;
    std::vector<int> out(spec_.n(), 0);
    for (const auto& p : parts)
      for (int i = 0; i < t; ++i) out[p[i]] = 1;
    for (int e = 0; e < spec_.r - k * t; ++e) ++out[parts[0][t + e]], ++pinned_[parts[0][t + e]];
    return out;
  }
  MoveSet move(const Position& pos) override { return best_swarm(spec_.g(), pos, spec_.m, &pinned_).move; }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<KPartiteLowerAttack>(*this); }

 private:
  GameSpec spec_;
  std::vector<int> pinned_;
};

void require_bipartite(const GameSpec& spec) {
  require_multipartite(spec.g(), spec.r);
  if (spec.g().part_count() != 2) fail(ErrorCode::StrategyMismatch, "graph is not bipartite");
}

}  // namespace

std::unique_ptr<RevStrategy> make_random_rev(const GameSpec& spec) { return std::make_unique<RandomRev>(spec); }

std::unique_ptr<RevStrategy> make_best_swarm_rev(const GameSpec& spec) {
  if (!is_complete_multipartite(spec.g())) fail(ErrorCode::StrategyMismatch, "swarms need a complete multipartite graph");
  return std::make_unique<SwarmRev>(spec, false);
}

std::unique_ptr<RevStrategy> make_alternating_swarm_rev(const GameSpec& spec) {
  if (!is_complete_multipartite(spec.g())) fail(ErrorCode::StrategyMismatch, "swarms need a complete multipartite graph");
  return std::make_unique<SwarmRev>(spec, true);
}

std::unique_ptr<RevStrategy> make_grouped_rev(const GameSpec& spec, int factor, int inner_m, const RevFactory& inner) {
  require(factor >= 1 && spec.r / factor >= 1, "cell size must leave at least one cell");
  return std::make_unique<GroupedRev>(spec, factor, inner_m, inner);
}

std::unique_ptr<RevStrategy> make_bipartite_attack_m2(const GameSpec& spec) {
  require_bipartite(spec);
  if (spec.m != 2) fail(ErrorCode::StrategyMismatch, "attack is for m = 2");
  return std::make_unique<BipartiteM2Attack>(spec);
}

std::unique_ptr<RevStrategy> make_bipartite_attack_m3(const GameSpec& spec) {
  require_bipartite(spec);
  if (spec.m != 3) fail(ErrorCode::StrategyMismatch, "attack is for m = 3");
  if (spec.r % 2 == 1) {
    // An extra revolutionary cannot hurt: play the r-1 attack and leave it idle.
    if (spec.r == 1) fail(ErrorCode::StrategyMismatch, "need at least two revolutionaries");
    return make_grouped_rev(spec, 1, 3, [](const GameSpec& s) { return std::make_unique<BipartiteM3Attack>(s); });
  }
  return std::make_unique<BipartiteM3Attack>(spec);
}

std::unique_ptr<RevStrategy> make_cell_grouping_attack(const GameSpec& spec, int base) {
  require_bipartite(spec);
  if (base == 3) {
    int cell = (spec.m + 2) / 3;
    if (spec.r / cell < 2) fail(ErrorCode::StrategyMismatch, "too few cells");
    return make_grouped_rev(spec, cell, 3, make_bipartite_attack_m3);
  }
  if (base == 2) {
    if (spec.m % 2 != 0) fail(ErrorCode::StrategyMismatch, "base-2 cells need even m");
    int cell = spec.m / 2;
    if (spec.r / cell < 2) fail(ErrorCode::StrategyMismatch, "too few cells");
    return make_grouped_rev(spec, cell, 2, make_bipartite_attack_m2);
  }
  fail(ErrorCode::InvalidArgument, "cell base must be 2 or 3");
}

std::unique_ptr<RevStrategy> make_kpartite_lower_attack(const GameSpec& spec) {
  require_multipartite(spec.g(), spec.r);
  if (spec.g().part_count() < spec.m) fail(ErrorCode::StrategyMismatch, "attack needs k >= m");
  if (spec.r / spec.g().part_count() < 1) fail(ErrorCode::StrategyMismatch, "need at least k revolutionaries");
  return std::make_unique<KPartiteLowerAttack>(spec);
}

int bipartite_m2_beaten(int r) { return bipartite_spy_count(2, r) - 1; }
int bipartite_m3_beaten(int r) { return r / 2 - 1; }
int kpartite_lower_beaten(int k, int m, int r) {
  int rr = k * (r / k);
  int num = k * (rr - m + 1), den = m * (k - 1) + 1;
  return (num + den - 1) / den - 1;
}

}  // namespace revspy
