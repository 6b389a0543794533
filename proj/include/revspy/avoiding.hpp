#pragma once

#include <bitset>
#include <cstdint>
#include <optional>
#include <vector>

namespace revspy {

// Subset of [t] for cube dimensions beyond 64 (bit i = coordinate i, 0-based).
constexpr int kMaxCubeDim = 128;
using CubeMask = std::bitset<kMaxCubeDim>;

bool cube_less(const CubeMask& a, const CubeMask& b);
inline int cube_distance(const CubeMask& a, const CubeMask& b) { return static_cast<int>((a ^ b).count()); }
// u of weight m is within m-1 of v iff |u ∩ v| >= (|v|+1)/2.
inline bool within_distance_prefix(const CubeMask& v, const CubeMask& u) {
  return 2 * (v & u).count() >= v.count() + 1;
}

struct AvoidingSearchStats {
  int samples_tried = 0;
  bool used_fallback = false;
  std::uint64_t fallback_nodes = 0;
};

constexpr double kAvoidingSampleProbability = 0.079532;

// A weight-m subset w of [t] at distance >= m from every spy (each of weight
// >= 2): random sampling first, then exhaustive search in lexicographic order.
std::optional<CubeMask> avoiding_vertex(int t, int m, const std::vector<CubeMask>& spies, std::uint64_t seed,
                                        int sample_budget = 200, std::uint64_t fallback_cap = 200'000'000,
                                        AvoidingSearchStats* stats = nullptr);

}  // namespace revspy
