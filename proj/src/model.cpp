#include "swf/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "swf/random.hpp"

namespace swf {

namespace {

std::vector<int> sample_support(int n, int k, Rng& rng) {
  // Partial Fisher-Yates over 0..n-1; first k slots become the support.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int j = 0; j < k; ++j) {
    const int swap_with = j + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - j)));
    std::swap(idx[j], idx[swap_with]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

void check_signal_args(int n, int k) {
  if (n < 1) throw std::invalid_argument("sample_sparse_signal: n must be >= 1");
  if (k < 1 || k > n) throw std::invalid_argument("sample_sparse_signal: need 1 <= k <= n");
}

}  // namespace

SignalVector sample_sparse_signal(int n, int k, std::uint64_t seed) {
  check_signal_args(n, k);
  Rng rng(seed_chain({seed, seed_tag::signal}));
  SignalVector x;
  x.support = sample_support(n, k, rng);
  x.sparsity_k = k;
  x.values = Vector::Zero(n);
  for (int j : x.support) {
    double v = rng.normal();
    while (v == 0.0) v = rng.normal();
    x.values[j] = v;
  }
  return x;
}

SignalVector sample_flat_sparse_signal(int n, int k, std::uint64_t seed) {
  check_signal_args(n, k);
  Rng rng(seed_chain({seed, seed_tag::signal}));
  SignalVector x;
  x.support = sample_support(n, k, rng);
  x.sparsity_k = k;
  x.values = Vector::Zero(n);
  for (int j : x.support) x.values[j] = rng.below(2) == 0 ? 1.0 : -1.0;
  return x;
}

Matrix sample_measurement_vectors(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1)
    throw std::invalid_argument("sample_measurement_vectors: need m >= 1 and n >= 1");
  Rng rng(seed_chain({seed, seed_tag::matrix}));
  Matrix A(m, n);
  double* data = A.data();  // row-major, contiguous
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(m) * n;
  for (std::ptrdiff_t i = 0; i < total; ++i) data[i] = rng.normal();
  return A;
}

MeasurementEnsemble measure(const SignalVector& x, const Matrix& A,
                            double noise_sigma, std::uint64_t seed) {
  if (A.cols() != x.values.size())
    throw std::invalid_argument("measure: A column count must equal signal dimension");
  if (noise_sigma < 0.0)
    throw std::invalid_argument("measure: noise_sigma must be nonnegative");
  MeasurementEnsemble e;
  e.vectors = A;
  e.noise_sigma = noise_sigma;
  e.m = static_cast<int>(A.rows());
  e.intensities = (A * x.values).array().square();
  if (noise_sigma > 0.0) {
    Rng rng(seed_chain({seed, seed_tag::noise}));
    for (int i = 0; i < e.m; ++i) e.intensities[i] += noise_sigma * rng.normal();
  }
  return e;
}

double sigma_for_snr(const SignalVector& x, const Matrix& A, double snr_db) {
  if (A.cols() != x.values.size())
    throw std::invalid_argument("sigma_for_snr: A column count must equal signal dimension");
  if (std::isinf(snr_db) && snr_db > 0.0) return 0.0;
  const double power = (A * x.values).array().square().square().mean();
  if (power <= 0.0)
    throw std::invalid_argument("sigma_for_snr: signal power is zero");
  return std::sqrt(power) * std::pow(10.0, -snr_db / 20.0);
}

}  // namespace swf
