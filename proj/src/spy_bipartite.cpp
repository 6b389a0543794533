#include <algorithm>
#include <cmath>
#include <numeric>

#include "revspy/multipartite.hpp"
#include "revspy/spies.hpp"

namespace revspy {

MoveSet greedy_migration(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies, int t1, int t2) {
  if (!g.has_parts() || g.part_count() != 2) fail(ErrorCode::StrategyMismatch, "greedy migration needs two parts");
  const auto& part = g.parts();
  int s[2] = {0, 0};
  for (Vertex v = 0; v < g.order(); ++v) {
    if (spies[v] > 1) fail(ErrorCode::TargetInfeasible, "more than one spy on vertex " + std::to_string(v));
    s[part[v]] += spies[v];
  }
  const int t[2] = {t1, t2};
  if (t1 < 0 || t2 < 0 || t1 + t2 != s[0] + s[1]) fail(ErrorCode::TargetInfeasible, "targets do not sum to the spy count");
  const int i = t[0] <= s[1] ? 0 : 1;
  const int o = 1 - i;

  auto members = [&](int p, bool with_spy) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.order(); ++v)
      if (part[v] == p && (spies[v] > 0) == with_spy) out.push_back(v);
    return out;
  };
  auto fewest_first = [&](std::vector<Vertex>& vs) {
    std::stable_sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) { return revs[a] < revs[b]; });
  };
  auto most_first = [&](std::vector<Vertex>& vs) {
    std::stable_sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) { return revs[a] > revs[b]; });
  };

  // (1) t_i spies leave X_o from the vertices with the fewest revolutionaries.
  auto leaving = members(o, true);
  fewest_first(leaving);
  leaving.resize(t[i]);
  std::vector<char> covered(g.order(), 0);
  for (Vertex v = 0; v < g.order(); ++v) covered[v] = spies[v] > 0 && part[v] == o;
  for (Vertex v : leaving) covered[v] = 0;

  MoveSet mv;
  // (2) every spy of X_i crosses to the fullest uncovered vertices of X_o.
  auto from_i = members(i, true);
  std::vector<Vertex> open_o;
  for (Vertex v = 0; v < g.order(); ++v)
    if (part[v] == o && !covered[v]) open_o.push_back(v);
  most_first(open_o);
  if (open_o.size() < from_i.size()) fail(ErrorCode::TargetInfeasible, "not enough uncovered vertices in the far part");
  for (std::size_t k = 0; k < from_i.size(); ++k) mv.add(from_i[k], open_o[k]);

  // (3) the spies from step 1 take the fullest vertices of the emptied X_i.
  std::vector<Vertex> open_i;
  for (Vertex v = 0; v < g.order(); ++v)
    if (part[v] == i) open_i.push_back(v);
  most_first(open_i);
  if (open_i.size() < leaving.size()) fail(ErrorCode::TargetInfeasible, "not enough vertices in the near part");
  for (std::size_t k = 0; k < leaving.size(); ++k) mv.add(leaving[k], open_i[k]);
  return mv.normalized();
}

int bipartite_spy_count(int m, int r) {
  if (m == 2) return static_cast<int>(std::ceil(((7 * r) / 2 - 3) / 5.0));
  if (m == 3) return r / 2;
  const double ratio = static_cast<double>(r) / m;
  if (ratio < 1.0 / (1.0 - 1.0 / std::sqrt(3.0))) return 4;
  return static_cast<int>(std::ceil((1.0 + 1.0 / std::sqrt(3.0)) * ratio - 1e-12)) + 1;
}

BipartiteParams bipartite_params(int m, int r, int s) {
  BipartiteParams p;
  p.m = m;
  p.r = r;
  p.s = s < 0 ? bipartite_spy_count(m, r) : s;
  if (m == 2) {
    p.alpha = p.s - r / 2;
    p.beta = (r - p.alpha) / 2;
  } else if (m == 3) {
    p.alpha = r / 2 - r / 3;
    p.beta = p.s - (r - p.alpha) / 3;
    p.exception_branch = r % 18 == 3;
  } else {
    p.small_ratio = static_cast<double>(r) / m < 1.0 / (1.0 - 1.0 / std::sqrt(3.0));
  }
  return p;
}

GeneralAlpha general_alpha(int m, int r, int r1) {
  GeneralAlpha a;
  const double M = m, R = r, R1 = r1, R2 = r - r1;
  a.x = std::sqrt(9 * R * R + 12 * R1 * R - 12 * R1 * R1) / (6 * M);
  const double x = a.x;
  a.u1 = (R + M * x - std::sqrt(std::max(0.0, R * R + 2 * R * x * M + x * x * M * M - 4 * x * R1 * M))) / (2 * x);
  a.u2 = (R + M * x - std::sqrt(std::max(0.0, R * R - 2 * R * x * M + x * x * M * M + 4 * x * R1 * M))) / (2 * x);
  std::vector<double> vals{x + R / M - (R - a.u1 * x) / M, (R - a.u2 * x) / M};
  // The ratio forms are 0/0 at the extremes r1 = 0 and r1 = r.
  if (std::abs(M - a.u1) > 1e-9) vals.push_back(x + R / M - R2 / (M - a.u1));
  if (std::abs(M - a.u2) > 1e-9) vals.push_back(R1 / (M - a.u2));
  a.defined = static_cast<int>(vals.size());
  a.alpha = vals[0];
  for (double v : vals) a.spread = std::max(a.spread, std::abs(v - vals[0]));
  return a;
}

int general_target(int m, int r, int s, int r1, GeneralAlpha* out) {
  GeneralAlpha a = general_alpha(m, r, r1);
  if (out) *out = a;
  const int floor_rm = r / m;
  int t;
  if (a.alpha <= a.x) t = static_cast<int>(std::ceil(a.x - 1e-9));
  else if (a.alpha > floor_rm) t = floor_rm;
  else t = static_cast<int>(std::ceil(a.alpha - 1e-9));
  return std::clamp(t, 0, s);
}

namespace {

enum class Mode { M2, M3, General };

class BipartiteSpy : public SpyStrategy {
 public:
  BipartiteSpy(const GameSpec& spec, Mode mode) : spec_(spec), mode_(mode), p_(bipartite_params(spec.m, spec.r, spec.s)) {}

  std::string id() const override {
    return mode_ == Mode::M2 ? "spy.bipartite-m2" : mode_ == Mode::M3 ? "spy.bipartite-m3" : "spy.bipartite-general";
  }

  std::vector<int> place(const Position& pos) override {
    const int s = spec_.s;
    int preferred = s / 2;
    if (mode_ == Mode::General && !p_.small_ratio) {
      int r1 = 0;
      for (Vertex v = 0; v < spec_.n(); ++v)
        if (spec_.g().parts()[v] == 0) r1 += pos.revs[v];
      preferred = general_target(spec_.m, spec_.r, s, r1);
    }
    if (mode_ == Mode::General && p_.small_ratio) preferred = 2;
    std::vector<int> order{preferred};
    for (int d = 1; d <= s; ++d) {
      if (preferred - d >= 0) order.push_back(preferred - d);
      if (preferred + d <= s) order.push_back(preferred + d);
    }
    std::vector<int> first;
    for (int s1 : order) {
      auto cand = spread(pos.revs, s1, s - s1);
      if (first.empty()) first = cand;
      Position p = pos;
      p.spies = cand;
      if (!unguarded_meeting(p, spec_.m) && invariants_hold(p)) return cand;
    }
    return first;
  }

  MoveSet respond(const Position& pos, const MoveSet&) override {
    auto pc = part_counts(spec_.g(), pos.revs, pos.spies);
    auto [t0, t1] = targets(pc.revs, pc.spies);
    return greedy_migration(spec_.g(), pos.revs, pos.spies, t0, t1);
  }

  std::vector<AuditNote> audit(const Position& pos) override {
    std::vector<AuditNote> out;
    auto pc = part_counts(spec_.g(), pos.revs, pos.spies);
    const int r = spec_.r;
    bool single = std::all_of(pos.spies.begin(), pos.spies.end(), [](int c) { return c <= 1; });
    out.push_back({"bipartite.one_spy_per_vertex", single, 0, ""});
    const int need = bipartite_spy_count(spec_.m, r);
    out.push_back({"spy_count.theorem", spec_.s >= need, static_cast<double>(spec_.s - need), ""});
    if (mode_ == Mode::M2) {
      for (int j = 0; j < 2; ++j) {
        int need = std::min(pc.revs[j], (r - pc.covered[1 - j]) / 2);
        out.push_back({"bipartite.m2.A", pc.spies[j] >= need, static_cast<double>(pc.spies[j] - need),
                       "part " + std::to_string(j + 1)});
        out.push_back({"bipartite.m2.B", pc.spies[j] >= p_.alpha, static_cast<double>(pc.spies[j] - p_.alpha),
                       "part " + std::to_string(j + 1)});
      }
    } else if (mode_ == Mode::M3) {
      for (int j = 0; j < 2; ++j) {
        int u = pc.max_uncovered[1 - j];
        bool clamped = u > 2;
        u = std::min(u, 2);
        int f = std::min((r - pc.covered[1 - j]) / 3, pc.revs[j] / (3 - u));
        out.push_back({"bipartite.m3.A", pc.spies[j] >= f, static_cast<double>(pc.spies[j] - f),
                       "part " + std::to_string(j + 1) + (clamped ? " (u clamped from above 2)" : "")});
        out.push_back({"bipartite.m3.B", pc.spies[j] >= p_.alpha, static_cast<double>(pc.spies[j] - p_.alpha),
                       "part " + std::to_string(j + 1)});
      }
      if (last_exception_) out.push_back({"bipartite.m3.exception_branch", true, 1, "beta+1 target used"});
      last_exception_ = false;
    } else if (!p_.small_ratio) {
      out.push_back({"bipartite.general.alpha_consistency", last_.spread <= 1e-9, last_.spread,
                     std::to_string(last_.defined) + " expressions defined"});
      bool xok = last_.x <= r / spec_.m + 1e-12 && last_.x + static_cast<double>(r) / spec_.m + 1 <= spec_.s + 1e-9;
      out.push_back({"bipartite.general.x_bounds", xok, last_.x, ""});
    }
    return out;
  }

  std::unique_ptr<SpyStrategy> clone() const override { return std::make_unique<BipartiteSpy>(*this); }

 private:
  // Spies on the fullest vertices of each part, one per vertex.
  std::vector<int> spread(const std::vector<int>& revs, int s0, int s1) const {
    std::vector<int> out(spec_.n(), 0);
    const int want[2] = {s0, s1};
    for (int p = 0; p < 2; ++p) {
      std::vector<Vertex> vs;
      for (Vertex v = 0; v < spec_.n(); ++v)
        if (spec_.g().parts()[v] == p) vs.push_back(v);
      std::stable_sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) { return revs[a] > revs[b]; });
      for (int k = 0; k < want[p] && k < static_cast<int>(vs.size()); ++k) out[vs[k]] = 1;
    }
    return out;
  }

  bool invariants_hold(const Position& pos) {
    auto notes = audit(pos);
    for (const auto& a : notes)
      if (!a.ok && a.key != "spy_count.theorem") return false;
    if (mode_ == Mode::General)
      for (int j = 0; j < 2; ++j)
        if (swarm_plan(spec_.g(), pos.revs, pos.spies, j, spec_.m).wins()) return false;
    return true;
  }

  std::pair<int, int> targets(const std::vector<int>& rp, const std::vector<int>& s) {
    const int total = s[0] + s[1];
    int t[2] = {0, 0};
    auto set = [&](int i, int v) {
      t[i] = v;
      t[1 - i] = total - v;
    };
    if (mode_ == Mode::M2) {
      for (int i = 0; i < 2; ++i)
        if (rp[i] <= p_.alpha) {
          set(i, p_.alpha);
          return {t[0], t[1]};
        }
      for (int i = 0; i < 2; ++i) {
        int need = std::min(rp[1 - i], p_.beta);
        if (s[i] >= need) {
          set(1 - i, need);
          return {t[0], t[1]};
        }
      }
      return {s[1], s[0]};
    }
    if (mode_ == Mode::M3) {
      const int a = p_.alpha, b = p_.beta, half = spec_.r / 2;
      for (int c = 1; c <= 4; ++c)
        for (int i = 0; i < 2; ++i) {
          int x = rp[i];
          if (c == 1 && x <= a) set(i, a);
          else if (c == 2 && a < x && x <= b) set(i, x);
          else if (c == 3 && b < x && x <= 2 * b) {
            bool exc = s[i] == a && p_.exception_branch;
            last_exception_ = exc;
            set(i, exc ? b + 1 : b);
          } else if (c == 4 && 2 * b < x && x <= half) set(i, x / 2);
          else continue;
          return {t[0], t[1]};
        }
      // Below the strategy's own count no case need apply: hold position.
      if (total < bipartite_spy_count(3, spec_.r)) return {s[0], s[1]};
      fail(ErrorCode::CaseSelectionFailed, "no m=3 case applies to r' = (" + std::to_string(rp[0]) + "," +
                                               std::to_string(rp[1]) + ")");
    }
    if (p_.small_ratio) return {2, total - 2};
    int t0 = general_target(spec_.m, spec_.r, total, rp[0], &last_);
    if (last_.spread > 1e-9) last_bad_ = true;
    return {t0, total - t0};
  }

  GameSpec spec_;
  Mode mode_;
  BipartiteParams p_;
  GeneralAlpha last_;
  bool last_bad_ = false;
  bool last_exception_ = false;
};

std::unique_ptr<SpyStrategy> make_bipartite(const GameSpec& spec, Mode mode) {
  require_multipartite(spec.g(), spec.r);
  if (spec.g().part_count() != 2) fail(ErrorCode::StrategyMismatch, "graph is not bipartite");
  if (mode == Mode::M2 && spec.m != 2) fail(ErrorCode::StrategyMismatch, "strategy is for m = 2");
  if (mode == Mode::M3 && spec.m != 3) fail(ErrorCode::StrategyMismatch, "strategy is for m = 3");
  if (spec.s < spec.r / spec.m) fail(ErrorCode::StrategyMismatch, "needs at least floor(r/m) spies");
  return std::make_unique<BipartiteSpy>(spec, mode);
}

}  // namespace

std::unique_ptr<SpyStrategy> make_bipartite_spy_m2(const GameSpec& spec) { return make_bipartite(spec, Mode::M2); }
std::unique_ptr<SpyStrategy> make_bipartite_spy_m3(const GameSpec& spec) { return make_bipartite(spec, Mode::M3); }
std::unique_ptr<SpyStrategy> make_bipartite_spy_general(const GameSpec& spec) {
  return make_bipartite(spec, Mode::General);
}

}  // namespace revspy
