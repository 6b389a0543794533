#include "revspy/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "revspy/matching.hpp"

namespace revspy {

namespace {

std::string key_of(const std::vector<int>& counts) {
  std::string s(counts.size(), '\0');
  for (std::size_t i = 0; i < counts.size(); ++i) s[i] = static_cast<char>(counts[i]);
  return s;
}

// Calls f(next) for every distribution reachable in one move (duplicates possible).
void for_each_raw_successor(const Graph& g, const std::vector<int>& counts, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> next(counts.size(), 0);
  std::vector<Vertex> occupied;
  for (Vertex v = 0; v < counts.size(); ++v)
    if (counts[v] > 0) occupied.push_back(v);
  std::vector<std::vector<Vertex>> closed(occupied.size());
  for (std::size_t i = 0; i < occupied.size(); ++i) {
    closed[i].push_back(occupied[i]);
    for (Vertex w : g.neighbors(occupied[i])) closed[i].push_back(w);
  }
  // Distribute counts[v] pieces of each occupied vertex over its closed neighbourhood.
  std::function<void(std::size_t, std::size_t, int)> rec = [&](std::size_t vi, std::size_t ti, int left) {
    if (vi == occupied.size()) {
      f(next);
      return;
    }
    const auto& targets = closed[vi];
    if (ti + 1 == targets.size()) {
      next[targets[ti]] += left;
      if (vi + 1 < occupied.size()) rec(vi + 1, 0, counts[occupied[vi + 1]]);
      else rec(vi + 1, 0, 0);
      next[targets[ti]] -= left;
      return;
    }
    for (int c = 0; c <= left; ++c) {
      next[targets[ti]] += c;
      rec(vi, ti + 1, left - c);
      next[targets[ti]] -= c;
    }
  };
  if (occupied.empty()) f(next);
  else rec(0, 0, counts[occupied[0]]);
}

std::vector<std::vector<int>> distinct_successors(const Graph& g, const std::vector<int>& counts) {
  std::unordered_set<std::string> seen;
  std::vector<std::vector<int>> out;
  for_each_raw_successor(g, counts, [&](const std::vector<int>& nx) {
    if (seen.insert(key_of(nx)).second) out.push_back(nx);
  });
  return out;
}

std::vector<Vertex> meetings_of(const std::vector<int>& revs, int m) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < revs.size(); ++v)
    if (revs[v] >= m) out.push_back(v);
  return out;
}

bool has_unguarded(const std::vector<int>& revs, const std::vector<int>& spies, int m) {
  for (std::size_t v = 0; v < revs.size(); ++v)
    if (revs[v] >= m && spies[v] == 0) return true;
  return false;
}

std::vector<Vertex> expand(const std::vector<int>& counts) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < counts.size(); ++v) out.insert(out.end(), counts[v], v);
  return out;
}

// Every spy reply leaves an unguarded meeting?
bool spies_cannot_cover(const Graph& g, const std::vector<int>& revs, const std::vector<int>& spies, int m) {
  return !coverable(meetings_of(revs, m), expand(spies), g);
}

}  // namespace

// ---- DistributionSpace -------------------------------------------------------------

std::uint64_t DistributionSpace::count(std::size_t n, int k) { return binomial(n + k - 1, k); }

DistributionSpace::DistributionSpace(const Graph& g, int pieces) : g_(&g), n_(g.order()), k_(pieces) {
  size_ = n_ == 0 ? 0 : count(n_, k_);
  if (k_ > 0 && size_ == UINT64_MAX) fail(ErrorCode::CapExceeded, "distribution space too large");
}

std::uint64_t DistributionSpace::rank(const std::vector<int>& counts) const {
  std::uint64_t idx = 0;
  int i = 0;
  for (Vertex v = 0; v < counts.size(); ++v)
    for (int c = 0; c < counts[v]; ++c, ++i) idx += binomial(v + i, i + 1);
  return idx;
}

std::vector<int> DistributionSpace::unrank(std::uint64_t idx) const {
  std::vector<int> counts(n_, 0);
  for (int i = k_ - 1; i >= 0; --i) {
    // largest c with C(c, i+1) <= idx
    std::uint64_t c = i;
    while (binomial(c + 1, i + 1) <= idx) ++c;
    idx -= binomial(c, i + 1);
    ++counts[c - i];
  }
  return counts;
}

std::vector<std::uint64_t> DistributionSpace::successors(const std::vector<int>& counts) const {
  std::vector<std::uint64_t> out;
  for_each_raw_successor(*g_, counts, [&](const std::vector<int>& nx) { out.push_back(rank(nx)); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t state_cap_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("REVSPY_STATE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

// ---- solve ------------------------------------------------------------------------

namespace {
struct Csr {
  std::vector<std::uint64_t> offset;
  std::vector<std::uint32_t> data;
  std::span<const std::uint32_t> of(std::uint64_t i) const {
    return {data.data() + offset[i], data.data() + offset[i + 1]};
  }
};

Csr build_successors(const DistributionSpace& sp) {
  Csr c;
  c.offset.reserve(sp.size() + 1);
  c.offset.push_back(0);
  for (std::uint64_t i = 0; i < sp.size(); ++i) {
    for (auto j : sp.successors(sp.unrank(i))) c.data.push_back(static_cast<std::uint32_t>(j));
    c.offset.push_back(c.data.size());
  }
  return c;
}

void set_bit(std::vector<std::uint64_t>& bits, std::uint64_t i) { bits[i >> 6] |= 1ULL << (i & 63); }
}  // namespace

SolveResult solve(const GameSpec& spec, std::uint64_t state_cap) {
  auto t0 = std::chrono::steady_clock::now();
  if (state_cap == 0) state_cap = state_cap_from_env();
  const Graph& g = spec.g();
  if (g.order() == 0 || g.order() > 64) fail(ErrorCode::CapExceeded, "solver supports graphs with 1..64 vertices");
  SolveResult res;
  res.graph = spec.graph;
  res.m = spec.m;
  std::uint64_t nr = DistributionSpace::count(g.order(), spec.r);
  std::uint64_t ns = DistributionSpace::count(g.order(), spec.s);
  if (nr == UINT64_MAX || ns == UINT64_MAX || nr > state_cap / std::max<std::uint64_t>(ns, 1) || nr * ns > state_cap)
    fail(ErrorCode::CapExceeded, "estimated " + std::to_string(nr) + " x " + std::to_string(ns) +
                                     " states exceeds the cap of " + std::to_string(state_cap));
  res.rev_space = std::make_unique<DistributionSpace>(g, spec.r);
  res.spy_space = std::make_unique<DistributionSpace>(g, spec.s);
  res.stats.rev_distributions = nr;
  res.stats.spy_distributions = ns;
  res.stats.states = nr * ns;

  res.meeting_mask.resize(nr);
  for (std::uint64_t a = 0; a < nr; ++a) {
    auto c = res.rev_space->unrank(a);
    for (Vertex v = 0; v < c.size(); ++v)
      if (c[v] >= spec.m) res.meeting_mask[a] |= 1ULL << v;
  }
  res.spy_mask.resize(ns);
  for (std::uint64_t b = 0; b < ns; ++b) {
    auto c = res.spy_space->unrank(b);
    for (Vertex v = 0; v < c.size(); ++v)
      if (c[v] > 0) res.spy_mask[b] |= 1ULL << v;
  }
  auto unguarded = [&](std::uint64_t a, std::uint64_t b) { return (res.meeting_mask[a] & ~res.spy_mask[b]) != 0; };

  Csr rs = build_successors(*res.rev_space);
  Csr ss = build_successors(*res.spy_space);
  const std::uint64_t total = nr * ns;
  res.rev_win.assign((total + 63) / 64, 0);
  res.after_win.assign((total + 63) / 64, 0);
  res.after_depth.assign(total, 0);
  std::vector<std::uint32_t> escapes(total, 0);
  std::vector<std::uint64_t> queue;  // tagged: low bit 0 = I-state, 1 = R-state
  std::vector<std::uint16_t> qdepth;  // rounds still needed; FIFO keeps it nondecreasing

  for (std::uint64_t a = 0; a < nr; ++a)
    for (std::uint64_t b = 0; b < ns; ++b) {
      std::uint32_t c = 0;
      for (auto b2 : ss.of(b)) c += !unguarded(a, b2);
      escapes[a * ns + b] = c;
      if (c == 0) {
        set_bit(res.after_win, a * ns + b);
        queue.push_back((a * ns + b) << 1);
        qdepth.push_back(0);
      }
    }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::uint64_t tag = queue[qi];
    std::uint16_t depth = qdepth[qi];
    std::uint64_t idx = tag >> 1;
    std::uint64_t a = idx / ns, b = idx % ns;
    if ((tag & 1) == 0) {
      // I(a,b) won: every R(a0,b) with a in succ(a0) is won (move relation is symmetric).
      for (auto a0 : rs.of(a)) {
        std::uint64_t j = a0 * ns + b;
        if (unguarded(a0, b) || SolveResult::test(res.rev_win, j)) continue;
        set_bit(res.rev_win, j);
        queue.push_back((j << 1) | 1);
        qdepth.push_back(depth);
      }
    } else {
      // R(a,b) won: each I(a,b0) with b in succ(b0) loses one escape.
      for (auto b0 : ss.of(b)) {
        std::uint64_t j = a * ns + b0;
        if (SolveResult::test(res.after_win, j)) continue;
        if (--escapes[j] == 0) {
          set_bit(res.after_win, j);
          queue.push_back(j << 1);
          std::uint16_t d = depth == UINT16_MAX ? depth : depth + 1;
          res.after_depth[j] = d;
          qdepth.push_back(d);
        }
      }
    }
  }
  for (auto w : res.rev_win) res.stats.rev_winning_states += std::popcount(w);

  res.winner = Winner::Spies;
  for (std::uint64_t a = 0; a < nr && res.winner == Winner::Spies; ++a) {
    bool all = true;
    for (std::uint64_t b = 0; b < ns && all; ++b)
      all = unguarded(a, b) || SolveResult::test(res.rev_win, a * ns + b);
    if (all) res.winner = Winner::Revolutionaries;
  }
  res.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

bool SolveResult::rev_wins_at(const std::vector<int>& revs, const std::vector<int>& spies) const {
  return test(rev_win, index(rev_space->rank(revs), spy_space->rank(spies)));
}

bool SolveResult::rev_wins_after_rev_move(const std::vector<int>& revs, const std::vector<int>& spies) const {
  return test(after_win, index(rev_space->rank(revs), spy_space->rank(spies)));
}

std::optional<std::vector<int>> SolveResult::winning_rev_target(const std::vector<int>& revs,
                                                                const std::vector<int>& spies) const {
  // Closest win, not just any: following arbitrary winning moves can cycle.
  std::uint64_t b = spy_space->rank(spies);
  std::optional<std::uint64_t> best;
  for (auto a2 : rev_space->successors(revs))
    if (test(after_win, index(a2, b)) && (!best || after_depth[index(a2, b)] < after_depth[index(*best, b)]))
      best = a2;
  if (!best) return std::nullopt;
  return rev_space->unrank(*best);
}

std::optional<std::vector<int>> SolveResult::safe_spy_target(const std::vector<int>& revs,
                                                             const std::vector<int>& spies) const {
  std::uint64_t a = rev_space->rank(revs);
  for (auto b2 : spy_space->successors(spies))
    if ((meeting_mask[a] & ~spy_mask[b2]) == 0 && !test(rev_win, index(a, b2))) return spy_space->unrank(b2);
  return std::nullopt;
}

std::optional<std::vector<int>> SolveResult::winning_rev_placement() const {
  for (std::uint64_t a = 0; a < stats.rev_distributions; ++a) {
    bool all = true;
    for (std::uint64_t b = 0; b < stats.spy_distributions && all; ++b)
      all = (meeting_mask[a] & ~spy_mask[b]) != 0 || test(rev_win, index(a, b));
    if (all) return rev_space->unrank(a);
  }
  return std::nullopt;
}

std::optional<std::vector<int>> SolveResult::safe_spy_placement(const std::vector<int>& revs) const {
  std::uint64_t a = rev_space->rank(revs);
  for (std::uint64_t b = 0; b < stats.spy_distributions; ++b)
    if ((meeting_mask[a] & ~spy_mask[b]) == 0 && !test(rev_win, index(a, b))) return spy_space->unrank(b);
  return std::nullopt;
}

Winner winner(const GameSpec& spec, std::uint64_t state_cap) { return solve(spec, state_cap).winner; }

int sigma_exact(const Graph& g, int m, int r, std::uint64_t state_cap) {
  auto gp = std::make_shared<const Graph>(g);
  int lo = r / m, hi = r - m + 1;
  if (lo < 0 || hi < lo) fail(ErrorCode::InvalidArgument, "need r >= m");
  // winner at hi is Spies (trivial follower); find least s with Spies.
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (winner(GameSpec(gp, m, r, mid), state_cap) == Winner::Spies) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

int sigma_exact_linear(const Graph& g, int m, int r, std::uint64_t state_cap) {
  auto gp = std::make_shared<const Graph>(g);
  for (int s = 0; s <= r - m + 1; ++s)
    if (winner(GameSpec(gp, m, r, s), state_cap) == Winner::Spies) return s;
  return r - m + 1;
}

// ---- bounded-depth search -------------------------------------------------------------

namespace {
struct BoundedSearch {
  const Graph& g;
  int m;
  std::uint64_t cap;
  std::uint64_t nodes = 0;
  std::vector<std::unordered_map<std::string, bool>> memo;

  bool win(const std::vector<int>& revs, const std::vector<int>& spies, int rounds) {
    if (has_unguarded(revs, spies, m)) return true;
    if (rounds == 0) return false;
    std::string key = key_of(revs) + '|' + key_of(spies);
    if (auto it = memo[rounds].find(key); it != memo[rounds].end()) return it->second;
    bool result = first_winning(revs, spies, rounds).has_value();
    memo[rounds][key] = result;
    return result;
  }

  std::optional<std::vector<int>> first_winning(const std::vector<int>& revs, const std::vector<int>& spies, int rounds) {
    auto rev_next = distinct_successors(g, revs);
    // Cheap pass: a move no spy reply can cover.
    for (const auto& a2 : rev_next) {
      if (++nodes > cap) fail(ErrorCode::CapExceeded, "bounded search exceeded node cap");
      if (spies_cannot_cover(g, a2, spies, m)) return a2;
    }
    if (rounds == 1) return std::nullopt;
    auto spy_next = distinct_successors(g, spies);
    for (const auto& a2 : rev_next) {
      bool all = true;
      for (const auto& b2 : spy_next) {
        if (++nodes > cap) fail(ErrorCode::CapExceeded, "bounded search exceeded node cap");
        if (has_unguarded(a2, b2, m)) continue;
        if (!win(a2, b2, rounds - 1)) {
          all = false;
          break;
        }
      }
      if (all) return a2;
    }
    return std::nullopt;
  }
};
}  // namespace

bool rev_can_win_within(const Position& pos, const GameSpec& spec, int rounds, std::uint64_t node_cap) {
  if (rounds < 0) fail(ErrorCode::InvalidArgument, "rounds must be nonnegative");
  BoundedSearch bs{spec.g(), spec.m, node_cap, 0, std::vector<std::unordered_map<std::string, bool>>(rounds + 1)};
  return bs.win(pos.revs, pos.spies, rounds);
}

std::optional<std::vector<int>> forced_win_move(const Position& pos, const GameSpec& spec, int rounds,
                                                std::uint64_t node_cap) {
  if (rounds < 1) return std::nullopt;
  BoundedSearch bs{spec.g(), spec.m, node_cap, 0, std::vector<std::unordered_map<std::string, bool>>(rounds + 1)};
  return bs.first_winning(pos.revs, pos.spies, rounds);
}

std::optional<MoveSet> flow_between(const Graph& g, const std::vector<int>& from, const std::vector<int>& to) {
  auto a = expand(from), b = expand(to);
  if (a.size() != b.size()) return std::nullopt;
  auto inst = BipartiteInstance::make(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (g.closed_adjacent(a[i], b[j])) inst.add(static_cast<int>(i), static_cast<int>(j));
  auto match = max_matching(inst);
  if (matching_size(match) != static_cast<int>(a.size())) return std::nullopt;
  MoveSet mv;
  for (std::size_t i = 0; i < a.size(); ++i) mv.add(a[i], b[match[i]], 1);
  return mv.normalized();
}

// ---- exhaustive adversary -------------------------------------------------------------

namespace {
struct AdversarySearch {
  const GameSpec& spec;
  std::uint64_t cap;
  AdversaryReport& rep;
  std::vector<std::vector<int>> line;

  bool rev_wins(RevStrategy& rev, const Position& pos, int rounds) {
    if (rounds == 0) return false;
    MoveSet mv = rev.move(pos);
    Position after = apply_move(spec, pos, mv, Side::Revolutionaries);
    if (rounds == 1) {
      // Last round: the spies survive iff every meeting can be covered.
      ++rep.lines;
      return spies_cannot_cover(spec.g(), after.revs, after.spies, spec.m);
    }
    for (const auto& b2 : distinct_successors(spec.g(), pos.spies)) {
      if (++rep.lines > cap) fail(ErrorCode::CapExceeded, "adversary search exceeded node cap");
      if (has_unguarded(after.revs, b2, spec.m)) continue;
      Position next = after;
      next.spies = b2;
      next.phase = Phase::RevToMove;
      next.round = pos.round + 1;
      line.push_back(b2);
      auto branch = rev.clone();
      bool ok = rev_wins(*branch, next, rounds - 1);
      if (!ok) return false;
      line.pop_back();
    }
    return true;
  }
};
}  // namespace

AdversaryReport exhaustive_spy_adversary(const GameSpec& spec, const RevStrategy& rev_proto, int rounds,
                                         const std::vector<std::vector<int>>* placements, std::uint64_t node_cap) {
  AdversaryReport rep;
  auto base = rev_proto.clone();
  Position pos = Position::initial(spec);
  pos = apply_placement(spec, pos, base->place(), Side::Revolutionaries);
  std::vector<std::vector<int>> all;
  if (!placements) {
    DistributionSpace sp(spec.g(), spec.s);
    if (sp.size() > node_cap) fail(ErrorCode::CapExceeded, "too many spy placements");
    for (std::uint64_t b = 0; b < sp.size(); ++b) all.push_back(sp.unrank(b));
    placements = &all;
  }
  for (const auto& b : *placements) {
    ++rep.placements;
    Position p = apply_placement(spec, pos, b, Side::Spies);
    if (unguarded_meeting(p, spec.m)) continue;
    AdversarySearch search{spec, node_cap, rep, {}};
    auto branch = base->clone();
    if (!search.rev_wins(*branch, p, rounds)) {
      rep.rev_always_wins = false;
      rep.counter_placement = b;
      rep.counter_replies = search.line;
      return rep;
    }
  }
  return rep;
}

// ---- solver-backed strategies ------------------------------------------------------------

namespace {
class SolverSpy : public SpyStrategy {
 public:
  explicit SolverSpy(const GameSpec& spec) : spec_(spec), result_(std::make_shared<SolveResult>(solve(spec))) {}
  std::string id() const override { return "spy.solver"; }
  std::vector<int> place(const Position& pos) override {
    if (auto b = result_->safe_spy_placement(pos.revs)) return *b;
    return result_->spy_space->unrank(0);
  }
  MoveSet respond(const Position& pos, const MoveSet&) override {
    auto target = result_->safe_spy_target(pos.revs, pos.spies);
    if (!target) return {};
    return *flow_between(spec_.g(), pos.spies, *target);
  }
  std::unique_ptr<SpyStrategy> clone() const override { return std::make_unique<SolverSpy>(*this); }

 private:
  GameSpec spec_;
  std::shared_ptr<SolveResult> result_;
};

class SolverRev : public RevStrategy {
 public:
  explicit SolverRev(const GameSpec& spec) : spec_(spec), result_(std::make_shared<SolveResult>(solve(spec))) {}
  std::string id() const override { return "rev.solver"; }
  std::vector<int> place() override {
    if (auto a = result_->winning_rev_placement()) return *a;
    return result_->rev_space->unrank(0);
  }
  MoveSet move(const Position& pos) override {
    auto target = result_->winning_rev_target(pos.revs, pos.spies);
    if (!target) return {};
    return *flow_between(spec_.g(), pos.revs, *target);
  }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<SolverRev>(*this); }

 private:
  GameSpec spec_;
  std::shared_ptr<SolveResult> result_;
};
}  // namespace

std::unique_ptr<SpyStrategy> make_solver_spy(const GameSpec& spec) { return std::make_unique<SolverSpy>(spec); }
std::unique_ptr<RevStrategy> make_solver_rev(const GameSpec& spec) { return std::make_unique<SolverRev>(spec); }

}  // namespace revspy
