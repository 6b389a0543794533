#include <algorithm>

#include "revspy/matching.hpp"
#include "revspy/revs.hpp"
#include "revspy/solver.hpp"

namespace revspy {

namespace {

std::vector<Vertex> uncovered_revs(const Position& pos) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < pos.revs.size(); ++v)
    if (pos.revs[v] > 0 && pos.spies[v] == 0) out.push_back(v);
  return out;
}

// ---- split graph -------------------------------------------------------------------------------

class SplitAttack : public RevStrategy {
 public:
  SplitAttack(const GameSpec& spec, SplitGraph sg) : spec_(spec), sg_(std::move(sg)) {}
  std::string id() const override { return "rev.split"; }
  std::vector<int> place() override {
    std::vector<int> out(spec_.n(), 0);
    for (int i = 0; i < spec_.r; ++i) out[sg_.clique[i]] = 1;
    return out;
  }
  // Uncovered clique revolutionaries move to the independent vertex of an m-set nobody watches.
  MoveSet move(const Position& pos) override {
    for (std::size_t i = 0; i < sg_.sets.size(); ++i) {
      const Vertex x = static_cast<Vertex>(sg_.r + i);
      if (pos.spies[x] > 0) continue;
      bool open = std::all_of(sg_.sets[i].begin(), sg_.sets[i].end(),
                              [&](Vertex c) { return pos.revs[c] > 0 && pos.spies[c] == 0; });
      if (!open) continue;
      MoveSet mv;
      for (Vertex c : sg_.sets[i]) mv.add(c, x);
      return mv.normalized();
    }
    return {};
  }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<SplitAttack>(*this); }

 private:
  GameSpec spec_;
  SplitGraph sg_;
};

// ---- domination-sharp construction -------------------------------------------------------------

class DomSharpAttack : public RevStrategy {
 public:
  DomSharpAttack(const GameSpec& spec, DomSharpGraph dg) : spec_(spec), dg_(std::move(dg)) {}
  std::string id() const override { return "rev.domsharp"; }
  std::vector<int> place() override {
    std::vector<int> out(spec_.n(), 0);
    for (int i = 0; i < spec_.r; ++i) out[dg_.R[i]] = 1;
    return out;
  }
  MoveSet move(const Position& pos) override {
    // A spy in U counts for its matched T vertex.
    std::vector<int> load(dg_.t, 0);
    for (Vertex v : dg_.T) load[v] = pos.spies[v];
    for (std::size_t k = 0; k < dg_.U.size(); ++k) load[dg_.u_match[k]] += pos.spies[dg_.U[k]];
    std::vector<Vertex> order(dg_.T.begin(), dg_.T.end());
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return load[a] < load[b]; });

    std::vector<char> free_r(spec_.n(), 0);
    for (Vertex v : dg_.R) free_r[v] = pos.revs[v] > 0 && pos.spies[v] == 0;
    const auto spies = pos.spy_list();
    for (Vertex v : order) {
      // Meetings at u(A,v) can only be covered from v or from u(A,v) itself.
      const int need = pos.spies[v] + 1;
      std::vector<char> used(spec_.n(), 0);
      MoveSet mv;
      std::vector<Vertex> meetings;
      for (std::size_t id = 0; id < dg_.sets.size() && static_cast<int>(meetings.size()) < need; ++id) {
        const auto& A = dg_.sets[id];
        if (!std::all_of(A.begin(), A.end(), [&](Vertex a) { return free_r[a] && !used[a]; })) continue;
        Vertex u = dg_.u_of(static_cast<int>(id), v);
        if (pos.spies[u] > 0) continue;
        for (Vertex a : A) used[a] = 1, mv.add(a, u);
        meetings.push_back(u);
      }
      if (static_cast<int>(meetings.size()) < need) continue;
      std::sort(meetings.begin(), meetings.end());
      if (!coverable(meetings, spies, spec_.g())) return mv.normalized();
    }
    return {};
  }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<DomSharpAttack>(*this); }

 private:
  GameSpec spec_;
  DomSharpGraph dg_;
};

// ---- extension property ------------------------------------------------------------------------

class ExtensionAttack : public RevStrategy {
 public:
  explicit ExtensionAttack(const GameSpec& spec) : spec_(spec) {}
  std::string id() const override { return "rev.extension"; }
  std::vector<int> place() override {
    std::vector<int> out(spec_.n(), 0);
    for (int i = 0; i < spec_.r; ++i) out[i] = 1;
    return out;
  }
  // All uncovered revolutionaries move to a vertex adjacent to each of them and to no spy.
  MoveSet move(const Position& pos) override {
    const auto& g = spec_.g();
    const auto T = uncovered_revs(pos);
    int tcount = 0;
    for (Vertex v : T) tcount += pos.revs[v];
    if (tcount < spec_.m) return {};
    for (Vertex x = 0; x < g.order(); ++x) {
      if (pos.spies[x] > 0 || pos.revs[x] > 0) continue;
      bool ok = std::all_of(T.begin(), T.end(), [&](Vertex v) { return g.adjacent(x, v); });
      for (Vertex y : g.neighbors(x)) ok = ok && pos.spies[y] == 0;
      if (!ok) continue;
      MoveSet mv;
      for (Vertex v : T) mv.add(v, x, pos.revs[v]);
      return mv.normalized();
    }
    return {};
  }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<ExtensionAttack>(*this); }

 private:
  GameSpec spec_;
};

// ---- retract pullback --------------------------------------------------------------------------

class RetractPullback : public RevStrategy {
 public:
  RetractPullback(const GameSpec& spec, const RetractionMap& f, const RevFactory& inner, Graph image_graph)
      : spec_(spec), image_(f.image), map_(f.map), index_(spec.n(), -1) {
    for (std::size_t k = 0; k < image_.size(); ++k) index_[image_[k]] = static_cast<int>(k);
    inner_spec_ = GameSpec(std::move(image_graph), spec.m, spec.r, spec.s);
    inner_ = inner(inner_spec_);
  }
  RetractPullback(const RetractPullback& o)
      : spec_(o.spec_), inner_spec_(o.inner_spec_), image_(o.image_), map_(o.map_), index_(o.index_),
        last_(o.last_), inner_(o.inner_->clone()) {}
  std::string id() const override { return inner_->id() + "@retract"; }
  void reseed(std::uint64_t seed) override { inner_->reseed(seed); }

  std::vector<int> place() override {
    auto inner = inner_->place();
    std::vector<int> out(spec_.n(), 0);
    for (std::size_t k = 0; k < image_.size(); ++k) out[image_[k]] = inner[k];
    return out;
  }
  MoveSet move(const Position& pos) override {
    MoveSet mv;
    for (const auto& f : inner_->move(project(pos)).normalized().flows) mv.add(image_[f.from], image_[f.to], f.count);
    return mv;
  }
  std::vector<AuditNote> audit(const Position& pos) override {
    auto p = project(pos);
    auto out = inner_->audit(p);
    if (!last_.empty()) {
      bool ok = flow_between(inner_spec_.g(), last_, p.spies).has_value();
      out.push_back({"retract.projected_spies_legal", ok, 0, ""});
    }
    last_ = p.spies;
    return out;
  }
  std::unique_ptr<RevStrategy> clone() const override { return std::make_unique<RetractPullback>(*this); }

 private:
  Position project(const Position& pos) const {
    Position p;
    p.phase = pos.phase;
    p.round = pos.round;
    p.revs.assign(image_.size(), 0);
    p.spies.assign(image_.size(), 0);
    for (Vertex v = 0; v < spec_.n(); ++v) {
      if (pos.revs[v] > 0) {
        if (index_[v] < 0) fail(ErrorCode::InvalidArgument, "revolutionary left the image");
        p.revs[index_[v]] += pos.revs[v];
      }
      p.spies[index_[map_[v]]] += pos.spies[v];
    }
    return p;
  }

  GameSpec spec_, inner_spec_;
  std::vector<Vertex> image_, map_;
  std::vector<int> index_;
  std::vector<int> last_;
  std::unique_ptr<RevStrategy> inner_;
};

}  // namespace

std::unique_ptr<RevStrategy> make_split_attack(const GameSpec& spec, const SplitGraph& sg) {
  if (!spec.g().same_edges(sg.graph)) fail(ErrorCode::StrategyMismatch, "graph is not the split construction");
  if (spec.r > sg.r || spec.m != sg.m) fail(ErrorCode::StrategyMismatch, "construction built for other parameters");
  return std::make_unique<SplitAttack>(spec, sg);
}

std::unique_ptr<RevStrategy> make_domsharp_attack(const GameSpec& spec, const DomSharpGraph& dg) {
  if (!spec.g().same_edges(dg.graph)) fail(ErrorCode::StrategyMismatch, "graph is not the domination construction");
  if (spec.r > dg.r || spec.m != dg.m) fail(ErrorCode::StrategyMismatch, "construction built for other parameters");
  return std::make_unique<DomSharpAttack>(spec, dg);
}

std::unique_ptr<RevStrategy> make_extension_attack(const GameSpec& spec) {
  if (static_cast<std::size_t>(spec.r) > spec.n()) fail(ErrorCode::StrategyMismatch, "too few vertices");
  return std::make_unique<ExtensionAttack>(spec);
}

std::unique_ptr<RevStrategy> make_retract_pullback(const GameSpec& spec, const RetractionMap& f, const RevFactory& inner,
                                                   std::optional<Graph> image_graph) {
  if (!spec.g().same_edges(f.host)) fail(ErrorCode::StrategyMismatch, "retraction host differs from the game graph");
  if (!is_retraction(f)) fail(ErrorCode::StrategyMismatch, "map is not a retraction");
  Graph h = image_graph ? std::move(*image_graph) : f.host.induced(f.image);
  if (!h.same_edges(f.host.induced(f.image))) fail(ErrorCode::InvalidArgument, "image graph differs from the induced image");
  return std::make_unique<RetractPullback>(spec, f, inner, std::move(h));
}

}  // namespace revspy
