#include "swf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swf/random.hpp"

namespace swf {

namespace {

void check_support(const std::vector<int>& S0, int n, const char* who) {
  if (S0.empty()) throw std::invalid_argument(std::string(who) + ": empty support");
  std::vector<int> sorted = S0;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0 || sorted.back() >= n)
    throw std::invalid_argument(std::string(who) + ": support index out of range");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument(std::string(who) + ": duplicate support index");
}

}  // namespace

double phi_squared(const Vector& y) {
  if (y.size() == 0) throw std::invalid_argument("phi_squared: empty input");
  return std::max(y.mean(), 0.0);
}

double kept_fraction(const Vector& y, double alpha_y) {
  if (y.size() == 0) throw std::invalid_argument("kept_fraction: empty input");
  const double cutoff = alpha_y * alpha_y * phi_squared(y);
  const auto kept = (y.array().abs() <= cutoff).count();
  return static_cast<double>(kept) / static_cast<double>(y.size());
}

Matrix build_truncated_matrix(const Matrix& A, const Vector& y,
                              const std::vector<int>& S0, double alpha_y) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (y.size() != m)
    throw std::invalid_argument("build_truncated_matrix: y length must equal row count of A");
  if (alpha_y <= 0.0)
    throw std::invalid_argument("build_truncated_matrix: alpha_y must be positive");
  check_support(S0, n, "build_truncated_matrix");

  const int d = static_cast<int>(S0.size());
  const double cutoff = alpha_y * alpha_y * phi_squared(y);

  Matrix restricted(m, d);
  Vector weights(m);
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < d; ++c) restricted(i, c) = A(i, S0[c]);
    weights[i] = std::abs(y[i]) <= cutoff ? y[i] : 0.0;
  }
  Matrix Y = restricted.transpose() * weights.asDiagonal() * restricted;
  Y /= static_cast<double>(m);
  // Symmetrize against rounding drift in the product.
  Y = ((Y + Y.transpose()) * 0.5).eval();
  return Y;
}

Vector power_method(const Matrix& Y, int iters, std::uint64_t seed) {
  const int d = static_cast<int>(Y.rows());
  if (d < 1) throw std::invalid_argument("power_method: empty matrix");
  if (Y.cols() != d) throw std::invalid_argument("power_method: matrix must be square");
  if (iters < 1) throw std::invalid_argument("power_method: iters must be >= 1");

  Rng rng(seed_chain({seed, seed_tag::power_start}));
  Vector v(d);
  do {
    for (int i = 0; i < d; ++i) v[i] = rng.normal();
  } while (v.norm() == 0.0);
  v /= v.norm();

  Vector w(d);
  for (int it = 0; it < iters; ++it) {
    w.noalias() = Y * v;
    const double nw = w.norm();
    if (nw == 0.0) break;  // v in the null space (e.g. Y = 0); keep current v
    v = w / nw;
  }

  int imax = 0;
  for (int i = 1; i < d; ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  if (v[imax] < 0.0) v = -v;
  return v;
}

InitResult assemble_initial(const Vector& z0_S0, const std::vector<int>& S0,
                            double phi, int n) {
  if (static_cast<int>(S0.size()) != z0_S0.size())
    throw std::invalid_argument("assemble_initial: support size must match vector length");
  if (phi < 0.0) throw std::invalid_argument("assemble_initial: phi must be nonnegative");
  check_support(S0, n, "assemble_initial");

  InitResult r;
  r.phi = phi;
  r.support_used = S0;
  r.z0 = Vector::Zero(n);
  if (phi == 0.0) return r;

  const double norm = z0_S0.norm();
  if (norm == 0.0)
    throw std::invalid_argument("assemble_initial: cannot scale a zero vector to phi > 0");
  for (int c = 0; c < z0_S0.size(); ++c) r.z0[S0[c]] = phi * z0_S0[c] / norm;
  return r;
}

InitResult spectral_initialize(const Matrix& A, const Vector& y,
                               const std::vector<int>& S0, double alpha_y,
                               int power_iters, std::uint64_t seed) {
  const double phi2 = phi_squared(y);
  InitResult r;
  if (phi2 == 0.0) {
    // Degenerate all-zero (or negative-mean) measurements: zero start.
    r = assemble_initial(Vector::Ones(S0.size()), S0, 0.0, static_cast<int>(A.cols()));
  } else {
    const Matrix Y = build_truncated_matrix(A, y, S0, alpha_y);
    const Vector v = power_method(Y, power_iters, seed);
    r = assemble_initial(v, S0, std::sqrt(phi2), static_cast<int>(A.cols()));
  }
  r.power_iters_run = phi2 == 0.0 ? 0 : power_iters;
  r.kept_fraction = kept_fraction(y, alpha_y);
  return r;
}

}  // namespace swf
