#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "revspy/graph.hpp"

namespace revspy {

enum class Side { Revolutionaries, Spies };
enum class Phase { RevPlacement, SpyPlacement, RevToMove, SpyToMove, Finished };

const char* phase_name(Phase p);
const char* side_name(Side s);

struct GameSpec {
  std::shared_ptr<const Graph> graph;
  int m = 1;
  int r = 1;
  int s = 0;
  bool initial_check = true;  // lose immediately if spy placement leaves an unguarded meeting

  GameSpec() = default;
  GameSpec(Graph g, int m_, int r_, int s_) : graph(std::make_shared<const Graph>(std::move(g))), m(m_), r(r_), s(s_) {}
  GameSpec(std::shared_ptr<const Graph> g, int m_, int r_, int s_) : graph(std::move(g)), m(m_), r(r_), s(s_) {}
  GameSpec with_spies(int spies) const {
    GameSpec o = *this;
    o.s = spies;
    return o;
  }
  const Graph& g() const { return *graph; }
  std::size_t n() const { return graph->order(); }

  // |V| >= r-m+1 >= floor(r/m) >= 1, plus basic sanity. Throws InvalidArgument.
  void validate(bool enforce_standing = true) const;
  bool standing_assumptions_hold() const;
};

// Simultaneous movement of one side: count pieces go from -> to (to in N[from]).
struct Flow {
  Vertex from;
  Vertex to;
  int count;
  bool operator==(const Flow&) const = default;
  auto operator<=>(const Flow&) const = default;
};

struct MoveSet {
  std::vector<Flow> flows;

  void add(Vertex from, Vertex to, int count = 1);
  // Merge duplicates, drop stays and zero counts, sort.
  MoveSet normalized() const;
  bool empty() const { return normalized().flows.empty(); }
  bool operator==(const MoveSet& o) const { return normalized().flows == o.normalized().flows; }
};

struct Position {
  std::vector<int> revs;   // per-vertex counts
  std::vector<int> spies;  // per-vertex counts
  Phase phase = Phase::RevPlacement;
  int round = 0;

  static Position initial(const GameSpec& spec);
  int total_revs() const;
  int total_spies() const;
  // Vertices with at least m revolutionaries, ascending.
  std::vector<Vertex> meetings(int m) const;
  // Spies expanded to one entry per spy, ascending vertex order.
  std::vector<Vertex> spy_list() const;
  std::vector<Vertex> rev_list() const;
  bool operator==(const Position&) const = default;
};

// Lowest vertex with >= m revolutionaries and no spy.
std::optional<Vertex> unguarded_meeting(const Position& pos, int m);

// Checks a flow against counts; returns an error message or empty.
std::string check_flow(const Graph& g, const std::vector<int>& counts, const MoveSet& move);
std::vector<int> apply_flow(const std::vector<int>& counts, const MoveSet& move);

bool legal(const GameSpec& spec, const Position& pos, const MoveSet& move, Side side);
std::string illegal_reason(const GameSpec& spec, const Position& pos, const MoveSet& move, Side side);
// Throws IllegalMove / OutOfPhase. Advances the phase; the round counter moves on
// after the spy phase. Win checks are the caller's business (see outcome_after).
Position apply_move(const GameSpec& spec, const Position& pos, const MoveSet& move, Side side);
Position apply_placement(const GameSpec& spec, const Position& pos, const std::vector<int>& counts, Side side);

// Flows realising a list of single-piece moves (from, to).
MoveSet moves_from_pairs(const std::vector<std::pair<Vertex, Vertex>>& pairs);
// Sorted list of spy/rev pieces; placement helper.
std::vector<int> counts_from_list(std::size_t n, const std::vector<Vertex>& pieces);

struct AuditNote {
  std::string key;
  bool ok = true;
  double value = 0.0;
  std::string detail;
};

class RevStrategy {
 public:
  virtual ~RevStrategy() = default;
  virtual std::string id() const = 0;
  virtual std::vector<int> place() = 0;
  // pos.phase == RevToMove; pos includes the spies.
  virtual MoveSet move(const Position& pos) = 0;
  virtual std::vector<AuditNote> audit(const Position&) { return {}; }
  virtual void reseed(std::uint64_t) {}
  virtual std::unique_ptr<RevStrategy> clone() const = 0;
};

class SpyStrategy {
 public:
  virtual ~SpyStrategy() = default;
  virtual std::string id() const = 0;
  // pos.phase == SpyPlacement, revolutionaries already placed.
  virtual std::vector<int> place(const Position& pos) = 0;
  // pos.phase == SpyToMove: revolutionaries have moved by rev_move.
  virtual MoveSet respond(const Position& pos, const MoveSet& rev_move) = 0;
  // Called with the end-of-round position (and after placement).
  virtual std::vector<AuditNote> audit(const Position&) { return {}; }
  virtual void reseed(std::uint64_t) {}
  virtual std::unique_ptr<SpyStrategy> clone() const = 0;
};

enum class Winner { Revolutionaries, Spies, Fault };

struct Outcome {
  Winner winner = Winner::Spies;
  int round = 0;                  // round of the win (0 = placement), or rounds survived
  std::optional<Vertex> vertex;   // unguarded meeting
  int horizon = 0;
  std::string fault_side;
  std::string fault_code;
  std::string fault_message;
};

struct RoundRecord {
  int round = 0;
  MoveSet rev_move;
  MoveSet spy_move;
  Position position;  // end of round
  std::vector<AuditNote> audits;
};

struct Transcript {
  GameSpec spec;
  std::string rev_strategy;
  std::string spy_strategy;
  std::uint64_t seed = 0;
  std::vector<int> rev_placement;
  std::vector<int> spy_placement;
  Position placed;  // position after both placements
  std::vector<AuditNote> placement_audits;
  std::vector<RoundRecord> rounds;
  Outcome outcome;

  std::vector<AuditNote> failed_audits() const;
  std::size_t audit_count(const std::string& key_prefix = "") const;
};

int default_horizon(const GameSpec& spec);

Transcript play(const GameSpec& spec, RevStrategy& rev, SpyStrategy& spy, int horizon, std::uint64_t seed = 0);

// Re-applies the recorded moves; true iff every recorded position and the outcome are reproduced.
bool replay_matches(const Transcript& t);

}  // namespace revspy
