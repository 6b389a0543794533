#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "revspy/acceptance.hpp"
#include "revspy/registry.hpp"
#include "revspy/serialize.hpp"
#include "revspy/service.hpp"
#include "revspy/solver.hpp"

using namespace revspy;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitCap = 3;

void write_file(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string winner_word(Winner w) { return result_name(w); }

int cmd_generate(const std::string& family, const std::string& format, const std::string& out) {
  Graph g = parse_family(family);
  std::string text = format == "json" ? to_json(g).dump(2) + "\n" : to_text(g);
  if (out.empty()) std::cout << text;
  else write_file(out, text);
  return 0;
}

int cmd_solve(const std::string& family, int m, int r, std::optional<int> s, bool linear, std::uint64_t cap,
              const std::string& report) {
  Graph g = parse_family(family);
  GameSpec spec(g, m, r, s.value_or(0));
  spec.validate();
  json j{{"schema_version", kSchemaVersion}, {"graph", family}, {"m", m}, {"r", r}};
  if (s) {
    auto res = solve(spec, cap);
    std::cout << winner_word(res.winner) << "\n";
    j["s"] = *s;
    j["winner"] = winner_name(res.winner);
    j["result"] = winner_word(res.winner);
    json st = to_json(res.stats);
    st.erase("seconds");  // reports are byte-identical across runs
    j["stats"] = st;
  } else {
    int sig = linear ? sigma_exact_linear(g, m, r, cap) : sigma_exact(g, m, r, cap);
    std::cout << "sigma=" << sig << "\n";
    j["sigma"] = sig;
    j["search"] = linear ? "linear" : "binary";
    j["trivial_lower"] = r / m;
    j["trivial_upper"] = r - m + 1;
  }
  write_file(report, j.dump(2) + "\n");
  return 0;
}

int cmd_duel(const std::string& family, int m, int r, int s, const std::string& rev_id, const std::string& spy_id,
             int horizon, std::uint64_t seed, const std::string& out) {
  GameSpec spec(parse_family(family), m, r, s);
  spec.validate();
  std::unique_ptr<RevStrategy> rev;
  std::unique_ptr<SpyStrategy> spy;
  try {
    rev = make_rev(rev_id, spec);
    spy = make_spy(spy_id, spec);
  } catch (const Error& e) {
    std::cerr << "strategy mismatch: " << e.what() << "\n";
    return kExitParse;
  }
  if (horizon <= 0) horizon = default_horizon(spec);
  auto t = play(spec, *rev, *spy, horizon, seed);
  std::cout << winner_word(t.outcome.winner);
  if (t.outcome.winner == Winner::Revolutionaries)
    std::cout << " round " << t.outcome.round << " at vertex " << *t.outcome.vertex;
  else if (t.outcome.winner == Winner::Spies)
    std::cout << " for " << t.outcome.round << " rounds";
  else
    std::cout << " (" << t.outcome.fault_side << ": " << t.outcome.fault_code << " " << t.outcome.fault_message << ")";
  auto failed = t.failed_audits();
  std::cout << "\naudits: " << t.audit_count() << " checked, " << failed.size() << " failed\n";
  for (std::size_t i = 0; i < failed.size() && i < 10; ++i)
    std::cout << "  " << failed[i].key << ": " << failed[i].detail << "\n";
  write_file(out, to_json(t).dump(2) + "\n");
  return 0;
}

int cmd_verify(std::vector<std::string> suites, const std::string& suite_file, const std::string& out, bool timing) {
  if (!suite_file.empty()) {
    std::ifstream in(suite_file);
    if (!in) fail(ErrorCode::ParseError, "cannot read suite file " + suite_file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::ParseError, std::string("suite file: ") + e.what());
    }
    const json& list = j.is_array() ? j : j.value("suites", json::array());
    for (const auto& s : list) suites.push_back(s.get<std::string>());
  }
  json results = json::array();
  bool all = true;
  if (suites.empty()) std::cerr << "warning: empty suite; nothing to verify\n";
  for (const auto& name : suites) {
    for (const auto& res : run_suite(name, [](const std::string& p) { std::cerr << "  .. " << p << "\n"; })) {
      all &= res.pass;
      std::cout << (res.pass ? "PASS " : "FAIL ") << res.id << " " << res.name << " :: " << res.detail << "\n";
      json row{{"suite", name}, {"id", res.id}, {"name", res.name}, {"pass", res.pass}, {"detail", res.detail}};
      if (timing) row["seconds"] = res.seconds;
      results.push_back(row);
    }
  }
  write_file(out, json{{"schema_version", kSchemaVersion}, {"pass", all}, {"results", results}}.dump(2) + "\n");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Revolutionaries and spies: generate graphs, solve, duel strategies, verify, serve sessions.\n"
               "Graphs use family:params, e.g. cycle:4, star:3, hypercube:3, bipartite:8,8, kpartite:4,4,4,\n"
               "random:40,0.5,7, webbed:10,3, split:2,4, domsharp:2,2,6.\n"
               "REVSPY_STATE_CAP overrides the solver state cap."};
  app.require_subcommand(1);

  std::string family, out, format = "text";
  int m = 2, r = 2, horizon = 0, port = 8080;
  std::optional<int> s;
  int duel_s = 0;
  bool linear = false, timing = false;
  std::uint64_t seed = 0, cap = 0;
  std::string rev_id, spy_id, suite_file, host = "127.0.0.1";
  std::vector<std::string> suites;

  auto* gen = app.add_subcommand("generate", "print a graph");
  gen->add_option("--graph", family, "family:params")->required();
  gen->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  gen->add_option("--out", out, "write to a file instead of stdout");

  auto* sol = app.add_subcommand("solve", "exact winner (with --s) or sigma (without)");
  sol->add_option("--graph", family, "family:params")->required();
  sol->add_option("--m", m, "meeting size")->required();
  sol->add_option("--r", r, "revolutionaries")->required();
  sol->add_option("--s", s, "spies; omit to compute sigma");
  sol->add_flag("--linear", linear, "linear sweep over s instead of binary search");
  sol->add_option("--cap", cap, "state cap (default REVSPY_STATE_CAP or 5e7)");
  sol->add_option("--report", out, "write a JSON report");

  auto* duel = app.add_subcommand("duel", "play two registered strategies");
  duel->add_option("--graph", family, "family:params")->required();
  duel->add_option("--m", m, "meeting size")->required();
  duel->add_option("--r", r, "revolutionaries")->required();
  duel->add_option("--s", duel_s, "spies")->required();
  duel->add_option("--rev", rev_id, "revolutionary strategy id")->required();
  duel->add_option("--spy", spy_id, "spy strategy id")->required();
  duel->add_option("--horizon", horizon, "rounds (default 4|V|r)");
  duel->add_option("--seed", seed, "seed");
  duel->add_option("--out", out, "write the transcript (JSON)");

  auto* ver = app.add_subcommand("verify", "run acceptance suites");
  ver->add_option("--suite", suites, "suite name (repeatable): acceptance, c1..c11, solver-oracle, table1");
  ver->add_option("--suite-file", suite_file, "JSON file {\"suites\": [...]}");
  ver->add_option("--out", out, "write results (JSON)");
  ver->add_flag("--timing", timing, "include run times in the results file");

  auto* srv = app.add_subcommand("serve", "HTTP session service");
  srv->add_option("--host", host, "bind address");
  srv->add_option("--port", port, "port");

  app.add_subcommand("strategies", "list registered strategies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*gen) return cmd_generate(family, format, out);
    if (*sol) return cmd_solve(family, m, r, s, linear, cap, out);
    if (*duel) return cmd_duel(family, m, r, duel_s, rev_id, spy_id, horizon, seed, out);
    if (*ver) return cmd_verify(suites, suite_file, out, timing);
    if (*srv) {
      SessionManager sessions;
      std::cerr << "listening on " << host << ":" << port << "\n";
      return serve(host, port, sessions) ? 0 : 1;
    }
    for (const auto& e : list_strategies()) std::cout << e.id << "\t" << side_name(e.side) << "\t" << e.summary << "\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what() << "\n";
    if (e.code() == ErrorCode::CapExceeded) return kExitCap;
    if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::InvalidArgument ||
        e.code() == ErrorCode::StrategyMismatch || e.code() == ErrorCode::NotFound)
      return kExitParse;
    return 1;
  }
}
