#include "revspy/game.hpp"
#include "revspy/matching.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace revspy {

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::RevPlacement: return "rev_placement";
    case Phase::SpyPlacement: return "spy_placement";
    case Phase::RevToMove: return "rev_to_move";
    case Phase::SpyToMove: return "spy_to_move";
    case Phase::Finished: return "finished";
  }
  return "?";
}

const char* side_name(Side s) { return s == Side::Revolutionaries ? "revolutionaries" : "spies"; }

bool GameSpec::standing_assumptions_hold() const {
  if (!graph || m < 1 || r < 1) return false;
  long long n = static_cast<long long>(graph->order());
  return n >= r - m + 1 && r - m + 1 >= r / m && r / m >= 1;
}

void GameSpec::validate(bool enforce_standing) const {
  if (!graph) fail(ErrorCode::InvalidArgument, "game spec has no graph");
  if (graph->order() == 0) fail(ErrorCode::InvalidArgument, "graph is empty");
  if (m < 1) fail(ErrorCode::InvalidArgument, "meeting size must be at least 1");
  if (r < 1) fail(ErrorCode::InvalidArgument, "need at least one revolutionary");
  if (s < 0) fail(ErrorCode::InvalidArgument, "spy count must be nonnegative");
  if (enforce_standing && !standing_assumptions_hold())
    fail(ErrorCode::InvalidArgument, "standing assumption |V| >= r-m+1 >= floor(r/m) >= 1 violated");
}

void MoveSet::add(Vertex from, Vertex to, int count) {
  if (count > 0 && from != to) flows.push_back({from, to, count});
}

MoveSet MoveSet::normalized() const {
  std::map<std::pair<Vertex, Vertex>, int> agg;
  for (const auto& f : flows)
    if (f.from != f.to && f.count != 0) agg[{f.from, f.to}] += f.count;
  MoveSet out;
  for (auto& [k, c] : agg)
    if (c != 0) out.flows.push_back({k.first, k.second, c});
  return out;
}

Position Position::initial(const GameSpec& spec) {
  Position p;
  p.revs.assign(spec.n(), 0);
  p.spies.assign(spec.n(), 0);
  return p;
}

int Position::total_revs() const { return std::accumulate(revs.begin(), revs.end(), 0); }
int Position::total_spies() const { return std::accumulate(spies.begin(), spies.end(), 0); }

std::vector<Vertex> Position::meetings(int m) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < revs.size(); ++v)
    if (revs[v] >= m) out.push_back(v);
  return out;
}

std::vector<Vertex> Position::spy_list() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < spies.size(); ++v) out.insert(out.end(), spies[v], v);
  return out;
}

std::vector<Vertex> Position::rev_list() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < revs.size(); ++v) out.insert(out.end(), revs[v], v);
  return out;
}

std::optional<Vertex> unguarded_meeting(const Position& pos, int m) {
  for (Vertex v = 0; v < pos.revs.size(); ++v)
    if (pos.revs[v] >= m && pos.spies[v] == 0) return v;
  return std::nullopt;
}

std::string check_flow(const Graph& g, const std::vector<int>& counts, const MoveSet& move) {
  std::vector<long long> out(counts.size(), 0);
  for (const auto& f : move.flows) {
    std::string where = "flow " + std::to_string(f.from) + "->" + std::to_string(f.to) + " x" + std::to_string(f.count);
    if (!g.contains(f.from) || !g.contains(f.to)) return where + ": vertex out of range";
    if (f.count < 0) return where + ": negative count";
    if (!g.closed_adjacent(f.from, f.to)) return where + ": not an edge";
    if (f.from != f.to) out[f.from] += f.count;
  }
  for (Vertex v = 0; v < counts.size(); ++v)
    if (out[v] > counts[v])
      return "vertex " + std::to_string(v) + ": " + std::to_string(out[v]) + " pieces leave but only " +
             std::to_string(counts[v]) + " present";
  return {};
}

std::vector<int> apply_flow(const std::vector<int>& counts, const MoveSet& move) {
  std::vector<int> next = counts;
  for (const auto& f : move.flows) {
    if (f.from == f.to) continue;
    next[f.from] -= f.count;
    next[f.to] += f.count;
  }
  return next;
}

std::string illegal_reason(const GameSpec& spec, const Position& pos, const MoveSet& move, Side side) {
  if (side == Side::Revolutionaries && pos.phase != Phase::RevToMove) return "not the revolutionaries' move";
  if (side == Side::Spies && pos.phase != Phase::SpyToMove) return "not the spies' move";
  return check_flow(spec.g(), side == Side::Revolutionaries ? pos.revs : pos.spies, move);
}

bool legal(const GameSpec& spec, const Position& pos, const MoveSet& move, Side side) {
  return illegal_reason(spec, pos, move, side).empty();
}

Position apply_move(const GameSpec& spec, const Position& pos, const MoveSet& move, Side side) {
  if ((side == Side::Revolutionaries && pos.phase != Phase::RevToMove) ||
      (side == Side::Spies && pos.phase != Phase::SpyToMove))
    fail(ErrorCode::OutOfPhase, std::string("it is not the ") + side_name(side) + "' turn (phase " + phase_name(pos.phase) + ")");
  auto why = check_flow(spec.g(), side == Side::Revolutionaries ? pos.revs : pos.spies, move);
  if (!why.empty()) fail(ErrorCode::IllegalMove, why);
  Position next = pos;
  if (side == Side::Revolutionaries) {
    next.revs = apply_flow(pos.revs, move);
    next.phase = Phase::SpyToMove;
  } else {
    next.spies = apply_flow(pos.spies, move);
    next.phase = Phase::RevToMove;
    next.round = pos.round + 1;
  }
  return next;
}

Position apply_placement(const GameSpec& spec, const Position& pos, const std::vector<int>& counts, Side side) {
  Phase want = side == Side::Revolutionaries ? Phase::RevPlacement : Phase::SpyPlacement;
  if (pos.phase != want) fail(ErrorCode::OutOfPhase, std::string("placement of ") + side_name(side) + " out of phase");
  if (counts.size() != spec.n()) fail(ErrorCode::IllegalMove, "placement has wrong length");
  long long total = 0;
  for (int c : counts) {
    if (c < 0) fail(ErrorCode::IllegalMove, "negative placement count");
    total += c;
  }
  int want_total = side == Side::Revolutionaries ? spec.r : spec.s;
  if (total != want_total)
    fail(ErrorCode::IllegalMove, "placement puts " + std::to_string(total) + " pieces, expected " + std::to_string(want_total));
  Position next = pos;
  if (side == Side::Revolutionaries) {
    next.revs = counts;
    next.phase = Phase::SpyPlacement;
  } else {
    next.spies = counts;
    next.phase = Phase::RevToMove;
    next.round = 1;
  }
  return next;
}

MoveSet moves_from_pairs(const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  MoveSet m;
  for (auto [a, b] : pairs) m.add(a, b, 1);
  return m.normalized();
}

std::vector<int> counts_from_list(std::size_t n, const std::vector<Vertex>& pieces) {
  std::vector<int> c(n, 0);
  for (Vertex v : pieces) ++c.at(v);
  return c;
}

std::vector<AuditNote> Transcript::failed_audits() const {
  std::vector<AuditNote> out;
  for (const auto& a : placement_audits)
    if (!a.ok) out.push_back(a);
  for (const auto& r : rounds)
    for (const auto& a : r.audits)
      if (!a.ok) out.push_back(a);
  return out;
}

std::size_t Transcript::audit_count(const std::string& prefix) const {
  std::size_t n = 0;
  auto match = [&](const AuditNote& a) { return a.key.compare(0, prefix.size(), prefix) == 0; };
  for (const auto& a : placement_audits) n += match(a);
  for (const auto& r : rounds)
    for (const auto& a : r.audits) n += match(a);
  return n;
}

int default_horizon(const GameSpec& spec) { return static_cast<int>(4 * spec.n() * spec.r); }

namespace {
void record_fault(Transcript& t, const char* side, const std::exception& e) {
  t.outcome.winner = Winner::Fault;
  t.outcome.fault_side = side;
  if (auto* err = dynamic_cast<const Error*>(&e)) t.outcome.fault_code = error_code_name(err->code());
  else t.outcome.fault_code = "exception";
  t.outcome.fault_message = e.what();
}

std::vector<AuditNote> collect(RevStrategy& rev, SpyStrategy& spy, const Position& p) {
  auto a = rev.audit(p);
  auto b = spy.audit(p);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}
}  // namespace

Transcript play(const GameSpec& spec, RevStrategy& rev, SpyStrategy& spy, int horizon, std::uint64_t seed) {
  if (horizon < 1) fail(ErrorCode::InvalidArgument, "horizon must be at least 1");
  Transcript t;
  t.spec = spec;
  t.rev_strategy = rev.id();
  t.spy_strategy = spy.id();
  t.seed = seed;
  t.outcome.horizon = horizon;
  rev.reseed(seed);
  spy.reseed(seed ^ 0x5bd1e995ULL);

  Position pos = Position::initial(spec);
  try {
    t.rev_placement = rev.place();
    pos = apply_placement(spec, pos, t.rev_placement, Side::Revolutionaries);
  } catch (const std::exception& e) {
    record_fault(t, "revolutionaries", e);
    return t;
  }
  try {
    t.spy_placement = spy.place(pos);
    pos = apply_placement(spec, pos, t.spy_placement, Side::Spies);
  } catch (const std::exception& e) {
    record_fault(t, "spies", e);
    return t;
  }
  t.placed = pos;
  t.placement_audits = collect(rev, spy, pos);
  if (spec.initial_check) {
    if (auto v = unguarded_meeting(pos, spec.m)) {
      t.outcome.winner = Winner::Revolutionaries;
      t.outcome.round = 0;
      t.outcome.vertex = v;
      return t;
    }
  }
  for (int round = 1; round <= horizon; ++round) {
    RoundRecord rec;
    rec.round = round;
    try {
      rec.rev_move = rev.move(pos).normalized();
      pos = apply_move(spec, pos, rec.rev_move, Side::Revolutionaries);
    } catch (const std::exception& e) {
      record_fault(t, "revolutionaries", e);
      return t;
    }
    bool conceded = false;
    try {
      rec.spy_move = spy.respond(pos, rec.rev_move).normalized();
      pos = apply_move(spec, pos, rec.spy_move, Side::Spies);
    } catch (const std::exception& e) {
      // No reply can save a position whose meetings cannot all be covered, so a
      // strategy giving up there just stays put and loses.
      if (coverable(pos.meetings(spec.m), pos.spy_list(), spec.g())) {
        record_fault(t, "spies", e);
        return t;
      }
      conceded = true;
      rec.spy_move = MoveSet{};
      pos = apply_move(spec, pos, rec.spy_move, Side::Spies);
    }
    rec.position = pos;
    rec.audits = collect(rev, spy, pos);
    if (conceded) rec.audits.push_back({"engine.spies_conceded", true, 0.0, "meetings uncoverable; spies stayed"});
    t.rounds.push_back(std::move(rec));
    if (auto v = unguarded_meeting(pos, spec.m)) {
      t.outcome.winner = Winner::Revolutionaries;
      t.outcome.round = round;
      t.outcome.vertex = v;
      return t;
    }
  }
  t.outcome.winner = Winner::Spies;
  t.outcome.round = horizon;
  return t;
}

bool replay_matches(const Transcript& t) {
  if (t.outcome.winner == Winner::Fault) return true;
  try {
    Position pos = Position::initial(t.spec);
    pos = apply_placement(t.spec, pos, t.rev_placement, Side::Revolutionaries);
    pos = apply_placement(t.spec, pos, t.spy_placement, Side::Spies);
    if (!(pos == t.placed)) return false;
    std::optional<Vertex> win;
    int win_round = -1;
    if (t.spec.initial_check && (win = unguarded_meeting(pos, t.spec.m))) win_round = 0;
    for (const auto& r : t.rounds) {
      if (win_round >= 0) return false;  // moves recorded after the game ended
      pos = apply_move(t.spec, pos, r.rev_move, Side::Revolutionaries);
      pos = apply_move(t.spec, pos, r.spy_move, Side::Spies);
      if (!(pos == r.position)) return false;
      if ((win = unguarded_meeting(pos, t.spec.m))) win_round = r.round;
    }
    if (t.outcome.winner == Winner::Revolutionaries)
      return win_round == t.outcome.round && win == t.outcome.vertex;
    return win_round < 0 && static_cast<int>(t.rounds.size()) == t.outcome.horizon;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace revspy
