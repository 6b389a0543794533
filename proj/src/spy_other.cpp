#include <algorithm>
#include <cmath>
#include <limits>

#include "revspy/matching.hpp"
#include "revspy/multipartite.hpp"
#include "revspy/rng.hpp"
#include "revspy/spies.hpp"
#include "revspy/structure.hpp"

namespace revspy {

FreeBound free_bound(const std::vector<int>& revs, const std::vector<int>& spies, int m) {
  FreeBound fb;
  fb.free_spies_at = spies;
  int r = 0, s = 0;
  for (std::size_t v = 0; v < revs.size(); ++v) {
    r += revs[v];
    s += spies[v];
    if (revs[v] >= m && spies[v] > 0) {
      ++fb.meetings;
      --fb.free_spies_at[v];
    }
  }
  fb.free_revs = r - m * fb.meetings;
  fb.free_spies = s - fb.meetings;
  return fb;
}

double neighbourhood_slack(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies, int m) {
  auto fb = free_bound(revs, spies, m);
  double worst = std::numeric_limits<double>::infinity();
  for (Vertex v = 0; v < g.order(); ++v) {
    int c = fb.free_spies_at[v];
    for (Vertex x : g.neighbors(v)) c += fb.free_spies_at[x];
    worst = std::min(worst, static_cast<double>(c));
  }
  return worst - static_cast<double>(fb.free_revs) / m;
}

double multipartite_slack(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies, int m) {
  if (!g.has_parts()) fail(ErrorCode::StrategyMismatch, "graph declares no parts");
  auto fb = free_bound(revs, spies, m);
  std::vector<int> per(g.part_count(), 0);
  for (Vertex v = 0; v < g.order(); ++v) per[g.parts()[v]] += fb.free_spies_at[v];
  int most = *std::max_element(per.begin(), per.end());
  return (fb.free_spies - most) - static_cast<double>(fb.free_revs) / m;
}

int qcommon_spy_count(std::size_t n, double q, int m, int r, double epsilon) {
  require(q > 0 && q <= 1 && epsilon > 0, "q in (0,1] and epsilon > 0 required");
  const double rm = static_cast<double>(r) / m;
  const double a = (1 + epsilon) / q * rm;
  const double shrink = 1 - 1 / (1 + epsilon);
  const double b = rm + std::log(static_cast<double>(n)) / (2 * shrink * shrink * q * q);
  return static_cast<int>(std::ceil(std::max(a, b) - 1e-12));
}

int kpartite_spy_count(int k, int m, int r) {
  require(k >= 2 && m >= 1, "k >= 2 required");
  const int num = k * r, den = (k - 1) * m;
  return (num + den - 1) / den + k;
}

namespace {

AuditNote note(std::string key, bool ok, double value = 0, std::string detail = {}) {
  return AuditNote{std::move(key), ok, value, std::move(detail)};
}

AuditNote covered_audit(const Position& pos, int m) {
  auto u = unguarded_meeting(pos, m);
  return note("meetings_covered", !u.has_value(), u ? static_cast<double>(*u) : 0.0);
}

// Phase 1: every meeting gets a distinct spy from N[meeting], fewest movers.
// Returns the moves and marks the spies (indices into `spies`) left free.
MoveSet phase_one(const Graph& g, const std::vector<Vertex>& meetings, const std::vector<Vertex>& spies,
                  std::vector<char>& is_free) {
  is_free.assign(spies.size(), 1);
  MoveSet mv;
  auto cover = min_movers_cover(meetings, spies, g);
  for (std::size_t i = 0; i < cover.meetings.size(); ++i) {
    is_free[cover.spy_of[i]] = 0;
    mv.add(spies[cover.spy_of[i]], cover.meetings[i]);
  }
  return mv;
}

// ---- q-common -------------------------------------------------------------------------------

class QCommonSpy : public SpyStrategy {
 public:
  QCommonSpy(const GameSpec& spec, QCommonConfig cfg) : spec_(spec), cfg_(cfg), rng_(mix_seed(0, 23)) {}
  std::string id() const override { return "spy.qcommon"; }
  void reseed(std::uint64_t seed) override { rng_ = Rng(mix_seed(seed, 23)); }

  std::vector<int> place(const Position& pos) override {
    const auto& g = spec_.g();
    std::vector<int> out(spec_.n(), 0);
    int left = spec_.s;
    for (Vertex v : pos.meetings(spec_.m))
      if (left > 0) ++out[v], --left;
    // Free spies: raise the weakest closed neighbourhood each time.
    std::vector<int> nb(spec_.n(), 0);
    while (left-- > 0) {
      Vertex best = 0;
      long best_score = -1;
      int low = *std::min_element(nb.begin(), nb.end());
      for (Vertex x = 0; x < spec_.n(); ++x) {
        long score = nb[x] == low;
        for (Vertex y : g.neighbors(x)) score += nb[y] == low;
        if (score > best_score) best = x, best_score = score;
      }
      ++out[best];
      ++nb[best];
      for (Vertex y : g.neighbors(best)) ++nb[y];
    }
    return out;
  }

  MoveSet respond(const Position& pos, const MoveSet&) override {
    const auto& g = spec_.g();
    const auto spies = pos.spy_list();
    std::vector<char> is_free;
    MoveSet cover = phase_one(g, pos.meetings(spec_.m), spies, is_free);
    std::vector<int> base(spec_.n(), 0);
    for (const auto& f : cover.flows) base[f.to] += f.count;
    std::vector<std::size_t> free_ids;
    for (std::size_t i = 0; i < spies.size(); ++i)
      if (is_free[i]) free_ids.push_back(i);

    fallback_used_ = false;
    for (int attempt = 0; attempt < cfg_.retries; ++attempt) {
      std::vector<int> now = base;
      MoveSet mv = cover;
      for (std::size_t i : free_ids) {
        auto nbrs = g.neighbors(spies[i]);
        Vertex to = nbrs.empty() ? spies[i] : nbrs[rng_.below(nbrs.size())];
        mv.add(spies[i], to);
        ++now[to];
      }
      if (neighbourhood_slack(g, pos.revs, now, spec_.m) >= -1e-9) return mv.normalized();
    }
    fallback_used_ = true;
    return greedy(pos, spies, free_ids, cover, base);
  }

  std::vector<AuditNote> audit(const Position& pos) override {
    double slack = neighbourhood_slack(spec_.g(), pos.revs, pos.spies, spec_.m);
    const int need = qcommon_spy_count(spec_.n(), cfg_.q, spec_.m, spec_.r, cfg_.epsilon);
    std::vector<AuditNote> out{covered_audit(pos, spec_.m), note("qcommon.stable", slack >= -1e-9, slack),
                               note("spy_count.theorem", spec_.s >= need, spec_.s - need)};
    if (fallback_used_) out.push_back(note("qcommon.fallback", true, 1, "random redistribution budget exhausted"));
    return out;
  }
  std::unique_ptr<SpyStrategy> clone() const override { return std::make_unique<QCommonSpy>(*this); }

 private:
  // Deterministic fallback: repeatedly apply the single free-spy move that most
  // raises min_v (free spies in N[v]); each spy moves at most once.
  MoveSet greedy(const Position& pos, const std::vector<Vertex>& spies, const std::vector<std::size_t>& free_ids,
                 MoveSet mv, std::vector<int> now) {
    const auto& g = spec_.g();
    std::vector<Vertex> at(spies.size());
    for (std::size_t i : free_ids) at[i] = spies[i], ++now[spies[i]];
    auto score = [&](const std::vector<int>& c) {
      auto fb = free_bound(pos.revs, c, spec_.m);
      int low = std::numeric_limits<int>::max(), ties = 0;
      for (Vertex v = 0; v < g.order(); ++v) {
        int x = fb.free_spies_at[v];
        for (Vertex y : g.neighbors(v)) x += fb.free_spies_at[y];
        if (x < low) low = x, ties = 1;
        else if (x == low) ++ties;
      }
      return std::pair<int, int>{low, -ties};
    };
    std::vector<char> moved(spies.size(), 0);
    auto cur = score(now);
    for (;;) {
      std::pair<int, int> best = cur;
      std::size_t who = 0;
      Vertex where = 0;
      for (std::size_t i : free_ids) {
        if (moved[i]) continue;
        --now[spies[i]];
        for (Vertex y : g.neighbors(spies[i])) {
          ++now[y];
          auto sc = score(now);
          if (sc > best) best = sc, who = i, where = y;
          --now[y];
        }
        ++now[spies[i]];
      }
      if (best == cur) break;
      moved[who] = 1;
      --now[spies[who]];
      ++now[where];
      at[who] = where;
      cur = best;
    }
    for (std::size_t i : free_ids) mv.add(spies[i], at[i]);
    return mv.normalized();
  }

  GameSpec spec_;
  QCommonConfig cfg_;
  Rng rng_;
  bool fallback_used_ = false;
};

// ---- k-partite -------------------------------------------------------------------------------

class KPartiteSpy : public SpyStrategy {
 public:
  explicit KPartiteSpy(const GameSpec& spec) : spec_(spec), k_(spec.g().part_count()) {}
  std::string id() const override { return "spy.kpartite"; }

  std::vector<int> place(const Position& pos) override {
    std::vector<int> out(spec_.n(), 0);
    int left = spec_.s;
    for (Vertex v : pos.meetings(spec_.m))
      if (left > 0) ++out[v], --left;
    std::vector<int> per(k_, 0);
    for (int i = 0; i < left; ++i) per[i % k_]++;
    for (int p = 0; p < k_; ++p)
      for (int c = 0; c < per[p]; ++c) ++out[fullest_open(pos.revs, out, p)];
    return out;
  }

  MoveSet respond(const Position& pos, const MoveSet&) override {
    const auto& g = spec_.g();
    const auto& part = g.parts();
    const auto spies = pos.spy_list();
    std::vector<char> is_free;
    MoveSet mv = phase_one(g, pos.meetings(spec_.m), spies, is_free);
    std::vector<int> now(spec_.n(), 0);
    for (const auto& f : mv.flows) now[f.to] += f.count;

    std::vector<std::vector<std::size_t>> free_in(k_);
    for (std::size_t i = 0; i < spies.size(); ++i)
      if (is_free[i]) free_in[part[spies[i]]].push_back(i), ++now[spies[i]];
    int total = 0;
    for (const auto& f : free_in) total += static_cast<int>(f.size());
    // Parts holding the most free spies keep the ceiling share.
    std::vector<int> order(k_);
    for (int p = 0; p < k_; ++p) order[p] = p;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return free_in[a].size() > free_in[b].size(); });
    std::vector<int> want(k_, total / k_);
    for (int i = 0; i < total % k_; ++i) ++want[order[i]];

    std::vector<std::size_t> leaving;
    for (int p = 0; p < k_; ++p) {
      auto& ids = free_in[p];
      std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
        return pos.revs[spies[a]] < pos.revs[spies[b]];
      });
      for (int c = 0; c < static_cast<int>(ids.size()) - want[p]; ++c) leaving.push_back(ids[c]);
    }
    std::size_t next = 0;
    for (int p = 0; p < k_; ++p)
      for (int c = static_cast<int>(free_in[p].size()); c < want[p]; ++c) {
        std::size_t i = leaving[next++];
        --now[spies[i]];
        Vertex to = fullest_open(pos.revs, now, p);
        ++now[to];
        mv.add(spies[i], to);
      }
    return mv.normalized();
  }

  std::vector<AuditNote> audit(const Position& pos) override {
    double slack = multipartite_slack(spec_.g(), pos.revs, pos.spies, spec_.m);
    const int need = kpartite_spy_count(k_, spec_.m, spec_.r);
    return {covered_audit(pos, spec_.m), note("kpartite.stable", slack >= -1e-9, slack),
            note("spy_count.theorem", spec_.s >= need, spec_.s - need)};
  }
  std::unique_ptr<SpyStrategy> clone() const override { return std::make_unique<KPartiteSpy>(*this); }

 private:
  // Uncovered vertex of part p with the most revolutionaries (lowest index on ties);
  // any vertex of p if all are covered.
  Vertex fullest_open(const std::vector<int>& revs, const std::vector<int>& spies, int p) const {
    std::optional<Vertex> best, any;
    for (Vertex v = 0; v < spec_.n(); ++v) {
      if (spec_.g().parts()[v] != p) continue;
      if (!any) any = v;
      if (spies[v] == 0 && (!best || revs[v] > revs[*best])) best = v;
    }
    return best ? *best : *any;
  }

  GameSpec spec_;
  int k_;
};

}  // namespace

std::unique_ptr<SpyStrategy> make_qcommon_spy(const GameSpec& spec, QCommonConfig cfg) {
  if (cfg.q == 0) cfg.q = common_neighbourhood_ratio(spec.g());
  if (cfg.q <= 0) fail(ErrorCode::StrategyMismatch, "graph is not q-common for any q > 0");
  if (!is_q_common(spec.g(), std::min(cfg.q, 0.999999)))
    fail(ErrorCode::StrategyMismatch, "graph is not " + std::to_string(cfg.q) + "-common");
  if (spec.s < spec.r / spec.m) fail(ErrorCode::StrategyMismatch, "needs at least floor(r/m) spies");
  return std::make_unique<QCommonSpy>(spec, cfg);
}

std::unique_ptr<SpyStrategy> make_kpartite_spy(const GameSpec& spec) {
  if (!is_complete_multipartite(spec.g())) fail(ErrorCode::StrategyMismatch, "graph has no complete multipartite structure");
  const int k = spec.g().part_count();
  if (k < 2) fail(ErrorCode::StrategyMismatch, "need at least two parts");
  if (spec.s < spec.r / spec.m) fail(ErrorCode::StrategyMismatch, "needs at least floor(r/m) spies");
  return std::make_unique<KPartiteSpy>(spec);
}

}  // namespace revspy
