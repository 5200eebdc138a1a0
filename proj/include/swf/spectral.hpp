#pragma once

#include <cstdint>
#include <vector>

#include "swf/types.hpp"

namespace swf {

/// Scaled initial iterate z0 (zero outside support_used, ||z0|| = phi).
struct InitResult {
  Vector z0;
  double phi = 0.0;
  std::vector<int> support_used;
  int power_iters_run = 0;
  double kept_fraction = 1.0;  // measurements passing |y_i| <= alpha_y^2 phi^2
};

/// Mean observed intensity, clamped at zero (noisy sums can go negative).
/// Estimates ||x||^2.
double phi_squared(const Vector& y);

/// Fraction of measurements passing the truncation rule |y_i| <= alpha_y^2 phi^2.
double kept_fraction(const Vector& y, double alpha_y);

/// Truncated spectral matrix restricted to the coordinates in S0:
/// Y = (1/m) sum_i y_i a_{i,S0} a_{i,S0}^T 1{|y_i| <= alpha_y^2 phi^2}.
Matrix build_truncated_matrix(const Matrix& A, const Vector& y,
                              const std::vector<int>& S0, double alpha_y);

/// Unit-norm approximation of the eigenvector for the largest-magnitude
/// eigenvalue, after a fixed number of power iterations from a seeded
/// random start. Sign is fixed so the largest-magnitude component is
/// positive.
Vector power_method(const Matrix& Y, int iters, std::uint64_t seed);

/// Embeds phi * (z0_S0 / ||z0_S0||) into an n-vector supported on S0.
InitResult assemble_initial(const Vector& z0_S0, const std::vector<int>& S0,
                            double phi, int n);

/// Full stage-2 pipeline: phi, truncated matrix, power method, embedding.
InitResult spectral_initialize(const Matrix& A, const Vector& y,
                               const std::vector<int>& S0, double alpha_y,
                               int power_iters, std::uint64_t seed);

}  // namespace swf
