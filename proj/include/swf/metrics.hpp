#pragma once

#include <cstdint>

#include "swf/types.hpp"

namespace swf {

/// Distance up to the global sign ambiguity: min(||z - x||, ||z + x||).
double dist(const Vector& z, const Vector& x);

/// Normalized error dist(xhat, x) / ||x||; sign-aligned by construction.
double nmse(const Vector& xhat, const Vector& x);

/// The success rule used by every experiment: NMSE strictly below 1e-5.
bool classify_success(double nmse_value);

struct TrialOutcome {
  double nmse = 0.0;
  bool success = false;
  int iterations = 0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
};

}  // namespace swf
