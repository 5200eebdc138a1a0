#include "swf/random.hpp"

#include <cmath>
#include <numbers>

namespace swf {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t seed_chain(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x8c9da2b7e51f3a64ull;
  for (std::uint64_t p : parts) h = splitmix64(h ^ p);
  return h;
}

double Rng::uniform() {
  // 53-bit mantissa from the top bits of the engine output.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Shifted so u1 > 0; log stays finite.
  const double u1 = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t v = engine_();
    if (v >= threshold) return v % bound;
  }
}

}  // namespace swf
