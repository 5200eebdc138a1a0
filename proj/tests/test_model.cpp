#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "swf/model.hpp"
#include "swf/metrics.hpp"

using namespace swf;

TEST_CASE("sample_sparse_signal: full support when k = n") {
  const SignalVector x = sample_sparse_signal(5, 5, 42);
  CHECK(x.support == std::vector<int>{0, 1, 2, 3, 4});
  for (int j = 0; j < 5; ++j) CHECK(x.values[j] != 0.0);
}

TEST_CASE("sample_sparse_signal: exactly k nonzeros, support matches pattern") {
  const SignalVector x = sample_sparse_signal(1000, 10, 7);
  CHECK(x.sparsity_k == 10);
  CHECK(x.support.size() == 10);
  int nnz = 0;
  for (int j = 0; j < 1000; ++j)
    if (x.values[j] != 0.0) ++nnz;
  CHECK(nnz == 10);
  for (int j : x.support) CHECK(x.values[j] != 0.0);
  CHECK(std::is_sorted(x.support.begin(), x.support.end()));
}

TEST_CASE("sample_sparse_signal: deterministic in the seed") {
  const SignalVector a = sample_sparse_signal(100, 10, 99);
  const SignalVector b = sample_sparse_signal(100, 10, 99);
  CHECK(a.values == b.values);
  CHECK(a.support == b.support);
  const SignalVector c = sample_sparse_signal(100, 10, 100);
  CHECK(a.values != c.values);
}

TEST_CASE("sample_flat_sparse_signal: equal magnitudes at the x_min boundary") {
  const SignalVector x = sample_flat_sparse_signal(50, 7, 3);
  for (int j : x.support) CHECK(std::abs(x.values[j]) == 1.0);
  const double xmin = 1.0;
  CHECK(xmin == doctest::Approx(x.values.norm() / std::sqrt(7.0)));
}

TEST_CASE("sample_sparse_signal: invalid arguments") {
  CHECK_THROWS_AS(sample_sparse_signal(10, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_sparse_signal(10, 11, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_measurement_vectors(0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_measurement_vectors(5, 0, 1), std::invalid_argument);
}

TEST_CASE("sample_measurement_vectors: law of large numbers sanity") {
  const int m = 100000;
  const Matrix A = sample_measurement_vectors(2, m, 11);
  for (int c = 0; c < 2; ++c) {
    const double mean = A.col(c).mean();
    const double var = (A.col(c).array() - mean).square().sum() / (m - 1);
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.05);
  }
}

TEST_CASE("sample_measurement_vectors: shapes and repeatability") {
  const Matrix A = sample_measurement_vectors(3, 4, 5);
  CHECK(A.rows() == 4);
  CHECK(A.cols() == 3);
  CHECK(A == sample_measurement_vectors(3, 4, 5));
  const Matrix single = sample_measurement_vectors(1, 1, 5);
  CHECK(single.rows() == 1);
  CHECK(single.cols() == 1);
}

TEST_CASE("measure: direct quadratic evaluation") {
  SignalVector x;
  x.values = Vector(2);
  x.values << 1.0, 0.0;
  x.support = {0};
  x.sparsity_k = 1;
  Matrix A(1, 2);
  A << 3.0, 4.0;
  const MeasurementEnsemble e = measure(x, A, 0.0, 0);
  CHECK(e.m == 1);
  CHECK(e.intensities[0] == 9.0);
  CHECK(e.noise_sigma == 0.0);
}

TEST_CASE("measure: zero signal gives zero intensities") {
  SignalVector x;
  x.values = Vector::Zero(3);
  Matrix A = sample_measurement_vectors(3, 6, 2);
  const MeasurementEnsemble e = measure(x, A, 0.0, 0);
  CHECK(e.intensities.isZero(0.0));
}

TEST_CASE("measure: noiseless consistency to machine precision") {
  const SignalVector x = sample_sparse_signal(20, 4, 13);
  const Matrix A = sample_measurement_vectors(20, 50, 14);
  const MeasurementEnsemble e = measure(x, A, 0.0, 0);
  const Vector rederived = (A * x.values).array().square();
  CHECK(e.intensities == rederived);
}

TEST_CASE("measure: dimension mismatch and bad sigma") {
  const SignalVector x = sample_sparse_signal(20, 4, 13);
  const Matrix A = sample_measurement_vectors(19, 50, 14);
  CHECK_THROWS_AS(measure(x, A, 0.0, 0), std::invalid_argument);
  const Matrix B = sample_measurement_vectors(20, 50, 14);
  CHECK_THROWS_AS(measure(x, B, -1.0, 0), std::invalid_argument);
}

TEST_CASE("measure: noise is seeded and has the requested scale") {
  const SignalVector x = sample_sparse_signal(10, 3, 21);
  const Matrix A = sample_measurement_vectors(10, 20000, 22);
  const MeasurementEnsemble clean = measure(x, A, 0.0, 5);
  const MeasurementEnsemble noisy1 = measure(x, A, 2.0, 5);
  const MeasurementEnsemble noisy2 = measure(x, A, 2.0, 5);
  CHECK(noisy1.intensities == noisy2.intensities);
  const Vector eps = noisy1.intensities - clean.intensities;
  const double sd = std::sqrt(eps.squaredNorm() / eps.size());
  CHECK(sd == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("sigma_for_snr: hand-solved case") {
  // Single measurement with (a.x)^4 = 100; at 20 dB sigma^2 = 100/10^2 = 1.
  SignalVector x;
  x.values = Vector(1);
  x.values << 1.0;
  Matrix A(1, 1);
  A << std::sqrt(10.0);
  CHECK(sigma_for_snr(x, A, 20.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sigma_for_snr: round trip and noiseless sentinel") {
  const SignalVector x = sample_sparse_signal(30, 5, 31);
  const Matrix A = sample_measurement_vectors(30, 200, 32);
  const double sigma = sigma_for_snr(x, A, 13.7);
  const double power = (A * x.values).array().square().square().mean();
  const double recovered = 10.0 * std::log10(power / (sigma * sigma));
  CHECK(recovered == doctest::Approx(13.7).epsilon(1e-12));
  CHECK(sigma_for_snr(x, A, std::numeric_limits<double>::infinity()) == 0.0);

  SignalVector zero;
  zero.values = Vector::Zero(30);
  CHECK_THROWS_AS(sigma_for_snr(zero, A, 10.0), std::invalid_argument);
}

TEST_CASE("measure: empirical E[y] matches ||x||^2") {
  const SignalVector x = sample_sparse_signal(2, 2, 17);
  const int m = 100000;
  const Matrix A = sample_measurement_vectors(2, m, 18);
  const MeasurementEnsemble e = measure(x, A, 0.0, 0);
  const double norm_sq = x.values.squaredNorm();
  // Var(y) = 2 ||x||^4 for Gaussian a.
  const double stderr3 = 3.0 * norm_sq * std::sqrt(2.0 / m);
  CHECK(std::abs(e.intensities.mean() - norm_sq) < stderr3);
}
