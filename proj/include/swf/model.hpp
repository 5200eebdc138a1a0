#pragma once

#include <cstdint>
#include <vector>

#include "swf/types.hpp"

namespace swf {

/// k-sparse ground-truth signal. `support` is sorted ascending and holds
/// exactly the indices of the nonzero entries.
struct SignalVector {
  Vector values;
  std::vector<int> support;
  int sparsity_k = 0;
};

/// Gaussian sensing vectors (row i = a_i) with intensity observations
/// y_i = (a_i . x)^2 + eps_i. Noiseless intensities are nonnegative;
/// noisy ones may be any real.
struct MeasurementEnsemble {
  Matrix vectors;
  Vector intensities;
  double noise_sigma = 0.0;
  int m = 0;
};

/// Signal with k nonzeros drawn i.i.d. standard normal on a uniformly
/// random size-k support. Deterministic given the seed.
SignalVector sample_sparse_signal(int n, int k, std::uint64_t seed);

/// Signal with k equal-magnitude (+1/-1) nonzeros on a uniformly random
/// support; by construction min |x_j| = ||x||/sqrt(k), the hardest
/// admissible flat profile for support recovery.
SignalVector sample_flat_sparse_signal(int n, int k, std::uint64_t seed);

/// m x n matrix of i.i.d. standard normal entries.
Matrix sample_measurement_vectors(int n, int m, std::uint64_t seed);

/// Quadratic measurements of x through A with additive Gaussian noise of
/// standard deviation noise_sigma (0 = noiseless).
MeasurementEnsemble measure(const SignalVector& x, const Matrix& A,
                            double noise_sigma, std::uint64_t seed);

/// Noise level sigma such that 10*log10(mean_i (a_i.x)^4 / sigma^2) equals
/// snr_db. An infinite snr_db means noiseless and returns 0.
double sigma_for_snr(const SignalVector& x, const Matrix& A, double snr_db);

}  // namespace swf
