#include <algorithm>

#include "revspy/revs.hpp"
#include "revspy/rng.hpp"

namespace revspy {

WideCubeRun run_wide_cube_attack(int d, int m, int r, int s, std::uint64_t seed) {
  require(d >= 1 && d <= kMaxCubeDim, "cube dimension out of range");
  require(m >= 2 && r >= m && r <= d && s >= 0, "need d >= r >= m >= 2 and s >= 0");
  WideCubeRun run;
  run.d = d, run.m = m, run.r = r, run.s = s;
  Rng rng(mix_seed(seed, 31));

  // Half the spies sit on revolutionaries at e_0.., the rest on random vertices of
  // weight 2..m+1 supported on the indices left uncovered.
  const int roaming = s / 2;
  const int covering = std::min(s - roaming, r);
  std::vector<CubeMask> spies;
  for (int i = 0; i < covering; ++i) {
    CubeMask v;
    v.set(i);
    spies.push_back(v);
  }
  const int span = r - covering;
  for (int k = 0; k < s - covering; ++k) {
    CubeMask v;
    if (span >= 2) {
      int weight = std::min(span, 2 + static_cast<int>(rng.below(m)));
      while (static_cast<int>(v.count()) < weight) v.set(covering + rng.below(span));
    }
    spies.push_back(v);
  }

  // Uncovered indices and the projection of the spies onto them.
  std::vector<char> covered(r, 0);
  for (const auto& v : spies)
    if (v.count() == 1)
      for (int i = 0; i < r; ++i)
        if (v.test(i)) covered[i] = 1;
  std::vector<int> back, index(d, -1);
  for (int i = 0; i < r; ++i)
    if (!covered[i]) index[i] = static_cast<int>(back.size()), back.push_back(i);
  run.uncovered = static_cast<int>(back.size());
  std::vector<CubeMask> S;
  for (const auto& v : spies) {
    CubeMask p;
    for (int i = 0; i < d; ++i)
      if (v.test(i) && index[i] >= 0) p.set(index[i]);
    if (p.count() >= 2) S.push_back(p);
  }
  run.projected_spies = static_cast<int>(S.size());
  if (run.uncovered < m) {
    run.detail = "fewer than m uncovered revolutionaries";
    return run;
  }
  auto w = avoiding_vertex(run.uncovered, m, S, seed, 200, 200'000'000, &run.search);
  if (!w) {
    run.detail = "no avoiding vertex";
    return run;
  }
  run.found = true;
  CubeMask target;
  std::vector<int> coords;
  for (int k = 0; k < run.uncovered; ++k)
    if (w->test(k)) target.set(back[k]), coords.push_back(back[k]);
  run.min_start_distance = d + 1;
  for (const auto& v : spies) run.min_start_distance = std::min(run.min_start_distance, cube_distance(v, target));

  // Walk: walker a starts at e_{coords[a]} and adds one coordinate of w per round.
  std::vector<CubeMask> walkers;
  for (int c : coords) {
    CubeMask v;
    v.set(c);
    walkers.push_back(v);
  }
  for (int step = 1; step < m; ++step) {
    for (int a = 0; a < m; ++a) walkers[a].set(coords[(a + step) % m]);
    // Spies chase: drop a stray coordinate, else add a missing one of w.
    for (auto& v : spies) {
      const CubeMask stray = v & ~target;
      const CubeMask pick = stray.any() ? stray : (target & ~v);
      for (int i = 0; i < d; ++i)
        if (pick.test(i)) {
          v.flip(i);
          break;
        }
    }
    run.rounds = step;
  }
  bool met = std::all_of(walkers.begin(), walkers.end(), [&](const CubeMask& v) { return v == target; });
  bool guarded = std::any_of(spies.begin(), spies.end(), [&](const CubeMask& v) { return v == target; });
  run.revs_win = met && !guarded;
  run.detail = met ? (guarded ? "meeting guarded" : "unguarded meeting at round " + std::to_string(run.rounds))
                   : "walkers did not meet";
  return run;
}

}  // namespace revspy
