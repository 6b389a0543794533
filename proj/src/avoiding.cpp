#include "revspy/avoiding.hpp"

#include <functional>

#include "revspy/error.hpp"
#include "revspy/rng.hpp"

namespace revspy {

bool cube_less(const CubeMask& a, const CubeMask& b) {
  for (int i = kMaxCubeDim - 1; i >= 0; --i)
    if (a[i] != b[i]) return b[i];
  return false;
}

namespace {
bool avoids_all(const std::vector<CubeMask>& spies, const CubeMask& w) {
  for (const auto& v : spies)
    if (within_distance_prefix(v, w)) return false;
  return true;
}
}  // namespace

std::optional<CubeMask> avoiding_vertex(int t, int m, const std::vector<CubeMask>& spies, std::uint64_t seed,
                                        int sample_budget, std::uint64_t fallback_cap, AvoidingSearchStats* stats) {
  if (t < 1 || t > kMaxCubeDim || m < 1 || m > t) fail(ErrorCode::InvalidArgument, "need 1 <= m <= t <= 128");
  for (const auto& v : spies) {
    if (v.count() < 2) fail(ErrorCode::InvalidArgument, "spy vertices must have weight at least 2");
    for (int i = t; i < kMaxCubeDim; ++i)
      if (v[i]) fail(ErrorCode::InvalidArgument, "spy vertex outside Q_t");
  }
  AvoidingSearchStats local;
  AvoidingSearchStats& st = stats ? *stats : local;
  st = {};

  CubeMask first;
  for (int i = 0; i < m; ++i) first.set(i);
  if (spies.empty()) return first;

  // Random subsets I with inclusion probability p; any m-subset of an I that
  // avoids every spy also avoids every spy.
  Rng rng(seed);
  for (int s = 0; s < sample_budget; ++s) {
    ++st.samples_tried;
    CubeMask sample;
    for (int i = 0; i < t; ++i)
      if (rng.bernoulli(kAvoidingSampleProbability)) sample.set(i);
    if (static_cast<int>(sample.count()) < m || !avoids_all(spies, sample)) continue;
    CubeMask w;
    for (int i = 0, k = 0; i < t && k < m; ++i)
      if (sample[i]) {
        w.set(i);
        ++k;
      }
    return w;
  }

  // Exhaustive fallback; prune as soon as a partial set meets some spy in half or more.
  st.used_fallback = true;
  CubeMask w;
  std::optional<CubeMask> found;
  std::function<void(int, int)> rec = [&](int start, int size) {
    if (found) return;
    if (++st.fallback_nodes > fallback_cap) fail(ErrorCode::CapExceeded, "avoiding-vertex fallback exceeded cap");
    if (size == m) {
      found = w;
      return;
    }
    for (int i = start; i <= t - (m - size) && !found; ++i) {
      w.set(i);
      if (avoids_all(spies, w)) rec(i + 1, size + 1);
      w.reset(i);
    }
  };
  rec(0, 0);
  return found;
}

}  // namespace revspy
