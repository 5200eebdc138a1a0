#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace swf {

/// SplitMix64 finalizer; used to decorrelate seed material.
std::uint64_t splitmix64(std::uint64_t x);

/// Folds an ordered list of seed components into one child seed.
/// Chained through splitmix64 so (1,2) and (2,1) land far apart.
std::uint64_t seed_chain(std::initializer_list<std::uint64_t> parts);

/// Seeded generator with an explicit Box-Muller normal sampler, so the
/// produced streams do not depend on the standard library's
/// normal_distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform();

  /// Standard normal via Box-Muller; second value of each pair is cached.
  double normal();

  /// Uniform integer in [0, bound), bound >= 1. Unbiased (rejection).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Purpose tags for deriving independent child streams from one master seed.
namespace seed_tag {
inline constexpr std::uint64_t signal = 0x5349474e414c5f31ull;
inline constexpr std::uint64_t matrix = 0x4d41545249585f31ull;
inline constexpr std::uint64_t noise = 0x4e4f4953455f3131ull;
inline constexpr std::uint64_t solver = 0x534f4c5645525f31ull;
inline constexpr std::uint64_t power_start = 0x504f5745525f3131ull;
}  // namespace seed_tag

}  // namespace swf
