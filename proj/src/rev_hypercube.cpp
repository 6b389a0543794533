#include <algorithm>
#include <bit>

#include "revspy/matching.hpp"
#include "revspy/revs.hpp"
#include "revspy/solver.hpp"

namespace revspy {

namespace {

int cube_dim(const GameSpec& spec) {
  auto d = spec.g().cube_dimension();
  if (!d) fail(ErrorCode::StrategyMismatch, "graph is not a hypercube");
  return *d;
}

MoveSet flows_to(const Graph& g, const std::vector<int>& from, const std::vector<int>& to) {
  auto mv = flow_between(g, from, to);
  if (!mv) fail(ErrorCode::IllegalMove, "search returned an unreachable target");
  return *mv;
}

// A single pair of lone revolutionaries forming one more meeting that the spies
// cannot cover together with the meetings already standing.
std::optional<MoveSet> pair_threat(const Graph& g, const Position& pos, int m) {
  std::vector<Vertex> lone, standing;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (pos.revs[v] == 1) lone.push_back(v);
    if (pos.revs[v] >= m) standing.push_back(v);
  }
  const auto spies = pos.spy_list();
  for (std::size_t a = 0; a < lone.size(); ++a)
    for (std::size_t b = a + 1; b < lone.size(); ++b) {
      const Vertex x = lone[a], y = lone[b];
      const Vertex diff = x ^ y;
      std::vector<Vertex> targets;
      if (std::popcount(diff) == 1) targets = {x, y};
      else if (std::popcount(diff) == 2) {
        Vertex lo = diff & (~diff + 1);
        targets = {x ^ lo, x ^ (diff ^ lo)};
      } else continue;
      for (Vertex w : targets) {
        if (std::find(standing.begin(), standing.end(), w) != standing.end()) continue;
        auto meetings = standing;
        meetings.push_back(w);
        std::sort(meetings.begin(), meetings.end());
        if (!coverable(meetings, spies, g)) {
          MoveSet mv;
          mv.add(x, w);
          mv.add(y, w);
          return mv.normalized();
        }
      }
    }
  return std::nullopt;
}

// ---- m = 2 ------------------------------------------------------------------------------------

class HypercubeM2 : public RevStrategy {
 public:
  HypercubeM2(const GameSpec& spec, std::vector<Vertex> centers, int per_group, std::string id)
      : spec_(spec), d_(cube_dim(spec)), centers_(std::move(centers)), per_group_(per_group), id_(std::move(id)) {
    exact_ = centers_.size() == 1 && spec.n() <= 16;
  }
  std::string id() const override { return id_; }

  std::vector<int> place() override {
    std::vector<int> out(spec_.n(), 0);
    int used = 0;
    for (Vertex c : centers_)
      for (int i = 0; i < per_group_; ++i, ++used) ++out[c ^ (Vertex{1} << i)];
    if (used < spec_.r) out[far_vertex()] += spec_.r - used;
    return out;
  }

  MoveSet move(const Position& pos) override {
    if (exact_) {
      for (int depth : {2, 1})
        if (auto t = forced_win_move(pos, spec_, depth)) return flows_to(spec_.g(), pos.revs, *t);
      return {};
    }
    if (auto mv = pair_threat(spec_.g(), pos, spec_.m)) return *mv;
    if (pos.round == 1) {
      // Three uncovered revolutionaries around a center: two of them meet at the center.
      for (Vertex c : centers_) {
        std::vector<Vertex> open;
        for (int i = 0; i < per_group_; ++i) {
          Vertex v = c ^ (Vertex{1} << i);
          if (pos.revs[v] > 0 && pos.spies[v] == 0) open.push_back(v);
        }
        if (open.size() == 3) {
          MoveSet mv;
          mv.add(open[0], c);
          mv.add(open[1], c);
          return mv.normalized();
        }
      }
    }
    return {};
  }

  std::vector<AuditNote> audit(const Position&) override {
    if (audited_ || centers_.size() < 2) return {};
    audited_ = true;
    int closest = d_;
    for (std::size_t a = 0; a < centers_.size(); ++a)
      for (std::size_t b = a + 1; b < centers_.size(); ++b)
        closest = std::min(closest, std::popcount(centers_[a] ^ centers_[b]));
    return {AuditNote{"hypercube.balls_disjoint", closest >= 9, static_cast<double>(closest), "radius-4 balls"}};
  }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<HypercubeM2>(*this); }

 private:
  // Idle revolutionaries: the vertex farthest from every center.
  Vertex far_vertex() const {
    Vertex best = 0;
    int best_d = -1;
    for (Vertex v = 0; v < spec_.n(); ++v) {
      int dmin = d_ + 1;
      for (Vertex c : centers_) dmin = std::min(dmin, std::popcount(v ^ c));
      if (dmin > best_d) best = v, best_d = dmin;
    }
    return best;
  }

  GameSpec spec_;
  int d_;
  std::vector<Vertex> centers_;
  int per_group_;
  std::string id_;
  bool exact_ = false;
  bool audited_ = false;
};

// ---- general m ---------------------------------------------------------------------------------

class HypercubeGeneral : public RevStrategy {
 public:
  explicit HypercubeGeneral(const GameSpec& spec) : spec_(spec), d_(cube_dim(spec)) {}
  std::string id() const override { return "rev.hypercube-general"; }
  void reseed(std::uint64_t seed) override { seed_ = seed; }

  std::vector<int> place() override {
    std::vector<int> out(spec_.n(), 0);
    for (int i = 0; i < spec_.r; ++i) out[Vertex{1} << i] = 1;
    return out;
  }

  MoveSet move(const Position& pos) override {
    if (step_ == 0) start(pos);
    if (!w_ || step_ >= spec_.m) return {};
    MoveSet mv;
    const int m = spec_.m;
    for (int a = 0; a < m; ++a) {
      Vertex bit = Vertex{1} << coords_[(a + step_) % m];
      mv.add(cur_[a], cur_[a] | bit);
      cur_[a] |= bit;
    }
    ++step_;
    return mv.normalized();
  }

  std::vector<AuditNote> audit(const Position&) override {
    std::vector<AuditNote> out;
    if (!reported_ && step_ > 0) {
      reported_ = true;
      out.push_back({"hypercube.avoiding_found", w_.has_value(), static_cast<double>(t_),
                     "t=" + std::to_string(t_) + " projected spies=" + std::to_string(projected_)});
      if (w_)
        out.push_back({"hypercube.start_distance", start_distance_ >= spec_.m, static_cast<double>(start_distance_),
                       "meeting vertex " + std::to_string(*w_)});
    }
    return out;
  }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<HypercubeGeneral>(*this); }

 private:
  void start(const Position& pos) {
    step_ = 1;
    std::vector<int> index(d_, -1), back;
    for (int i = 0; i < spec_.r; ++i) {
      Vertex v = Vertex{1} << i;
      if (pos.revs[v] > 0 && pos.spies[v] == 0) {
        index[i] = static_cast<int>(back.size());
        back.push_back(i);
      }
    }
    t_ = static_cast<int>(back.size());
    // Spies touching at most one uncovered index cannot get within m-1 of w.
    std::vector<CubeMask> S;
    for (Vertex v : pos.spy_list()) {
      CubeMask p;
      for (int i = 0; i < d_; ++i)
        if ((v >> i & 1) && index[i] >= 0) p.set(index[i]);
      if (p.count() >= 2) S.push_back(p);
    }
    projected_ = static_cast<int>(S.size());
    if (t_ < spec_.m) return;
    auto w = avoiding_vertex(t_, spec_.m, S, seed_);
    if (!w) return;
    Vertex real = 0;
    for (int k = 0; k < t_; ++k)
      if (w->test(k)) {
        coords_.push_back(back[k]);
        real |= Vertex{1} << back[k];
      }
    w_ = real;
    for (int c : coords_) cur_.push_back(Vertex{1} << c);
    start_distance_ = d_ + 1;
    for (Vertex v : pos.spy_list()) start_distance_ = std::min(start_distance_, std::popcount(v ^ real));
  }

  GameSpec spec_;
  int d_;
  std::uint64_t seed_ = 0;
  int step_ = 0;
  int t_ = 0, projected_ = 0, start_distance_ = 0;
  bool reported_ = false;
  std::optional<Vertex> w_;
  std::vector<int> coords_;
  std::vector<Vertex> cur_;
};

}  // namespace

std::vector<Vertex> replicated_centers(int d, int groups) {
  auto code = greedy_code(d, 9);
  if (static_cast<int>(code.members.size()) < groups)
    fail(ErrorCode::InvalidArgument, "distance-9 code in Q_" + std::to_string(d) + " has " +
                                         std::to_string(code.members.size()) + " words, need " + std::to_string(groups));
  std::vector<Vertex> out;
  for (int i = 0; i < groups; ++i) out.push_back(static_cast<Vertex>(code.members[i]));
  return out;
}

std::unique_ptr<RevStrategy> make_hypercube_attack_m2(const GameSpec& spec) {
  int d = cube_dim(spec);
  if (spec.m != 2) fail(ErrorCode::StrategyMismatch, "attack is for m = 2");
  if (d < spec.r) fail(ErrorCode::StrategyMismatch, "attack needs d >= r");
  return std::make_unique<HypercubeM2>(spec, std::vector<Vertex>{0}, spec.r, "rev.hypercube-m2");
}

std::unique_ptr<RevStrategy> make_replicated_hypercube_attack(const GameSpec& spec) {
  int d = cube_dim(spec);
  if (spec.m != 2) fail(ErrorCode::StrategyMismatch, "replicated attack is implemented for m = 2");
  if (spec.r <= d) fail(ErrorCode::StrategyMismatch, "replicated attack needs r > d");
  return std::make_unique<HypercubeM2>(spec, replicated_centers(d, spec.r / d), d, "rev.hypercube-replicated");
}

std::unique_ptr<RevStrategy> make_hypercube_attack_general(const GameSpec& spec) {
  int d = cube_dim(spec);
  if (d < spec.r) fail(ErrorCode::StrategyMismatch, "attack needs d >= r");
  if (spec.m < 2 || spec.r < spec.m) fail(ErrorCode::StrategyMismatch, "attack needs r >= m >= 2");
  return std::make_unique<HypercubeGeneral>(spec);
}

}  // namespace revspy
