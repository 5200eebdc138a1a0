#include "swf/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "swf/metrics.hpp"
#include "swf/random.hpp"
#include "swf/spectral.hpp"
#include "swf/support.hpp"
#include "topk_select.hpp"

namespace swf {

double step_size(int t, const StepSchedule& schedule) {
  if (t < 0) throw std::invalid_argument("step_size: t must be nonnegative");
  if (schedule.kind == StepSchedule::Kind::constant) return schedule.mu;
  return std::min((1.0 - std::exp(-t / 330.0)) / 2.0, 0.1);
}

namespace {

void check_dims(const Matrix& A, const Vector& y, const Vector& z, const char* who) {
  if (A.rows() < 1 || A.cols() < 1)
    throw std::invalid_argument(std::string(who) + ": empty measurement matrix");
  if (y.size() != A.rows())
    throw std::invalid_argument(std::string(who) + ": y length must equal row count of A");
  if (z.size() != A.cols())
    throw std::invalid_argument(std::string(who) + ": z length must equal column count of A");
}

// q = A z, walking only the nonzero coordinates of z when it is sparse
// enough for the scattered reads to win over a dense gemv.
void measurements_of(const Matrix& A, const Vector& z, Vector& q) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  std::vector<int> nz;
  nz.reserve(64);
  bool dense = false;
  for (int j = 0; j < n && !dense; ++j)
    if (z[j] != 0.0) {
      if (static_cast<int>(nz.size()) * 8 >= n)
        dense = true;
      else
        nz.push_back(j);
    }
  if (dense) {
    q.noalias() = A * z;
    return;
  }
  q.resize(m);
  for (int i = 0; i < m; ++i) {
    const double* row = A.data() + static_cast<std::ptrdiff_t>(i) * n;
    double acc = 0.0;
    for (int j : nz) acc += row[j] * z[j];
    q[i] = acc;
  }
}

struct GradEval {
  double objective = 0.0;
  bool finite = true;
};

// Objective and gradient in one pass over the measurements.
GradEval eval_objective_gradient(const Matrix& A, const Vector& y, const Vector& z,
                                 Vector& q, Vector& w, Vector& grad) {
  const int m = static_cast<int>(A.rows());
  measurements_of(A, z, q);
  GradEval r;
  double obj = 0.0;
  w.resize(m);
  for (int i = 0; i < m; ++i) {
    const double resid = q[i] * q[i] - y[i];
    obj += resid * resid;
    w[i] = resid * q[i];
  }
  r.objective = obj / (2.0 * m);
  grad.noalias() = A.transpose() * w;
  grad *= 2.0 / m;
  r.finite = std::isfinite(r.objective) && grad.allFinite();
  return r;
}

std::vector<int> nonzero_pattern(const Vector& z) {
  std::vector<int> s;
  for (int j = 0; j < z.size(); ++j)
    if (z[j] != 0.0) s.push_back(j);
  return s;
}

void check_config(const SwfConfig& c, int n) {
  if (c.k_prior < 1 || c.k_prior > n)
    throw std::invalid_argument("swf_solve: need 1 <= k_prior <= n");
  if (c.max_iters < 1) throw std::invalid_argument("swf_solve: max_iters must be >= 1");
  if (c.tol <= 0.0) throw std::invalid_argument("swf_solve: tol must be positive");
  if (c.alpha_y <= 0.0) throw std::invalid_argument("swf_solve: alpha_y must be positive");
  if (c.power_iters < 1) throw std::invalid_argument("swf_solve: power_iters must be >= 1");
}

}  // namespace

double objective(const Vector& z, const Matrix& A, const Vector& y) {
  check_dims(A, y, z, "objective");
  const Vector q = A * z;
  return (q.array().square() - y.array()).square().sum() / (2.0 * A.rows());
}

Vector gradient(const Vector& z, const Matrix& A, const Vector& y) {
  check_dims(A, y, z, "gradient");
  Vector q, w, g;
  eval_objective_gradient(A, y, z, q, w, g);
  return g;
}

Vector hard_threshold(const Vector& v, int k) {
  const int n = static_cast<int>(v.size());
  if (k < 1 || k > n) throw std::invalid_argument("hard_threshold: need 1 <= k <= n");
  if (k == n) return v;
  std::vector<double> mag(n);
  for (int j = 0; j < n; ++j) mag[j] = std::abs(v[j]);
  const std::vector<int> keep = detail::top_k_by_key(mag.data(), n, k);
  Vector out = Vector::Zero(n);
  for (int j : keep) out[j] = v[j];
  return out;
}

Vector swf_iterate(const Vector& z, const Matrix& A, const Vector& y, int k,
                   double mu, double phi_sq) {
  check_dims(A, y, z, "swf_iterate");
  if (phi_sq <= 0.0) throw std::invalid_argument("swf_iterate: phi_sq must be positive");
  Vector q, w, g;
  eval_objective_gradient(A, y, z, q, w, g);
  return hard_threshold(z - (mu / phi_sq) * g, k);
}

SolveResult swf_solve(const Matrix& A, const Vector& y, const SwfConfig& config,
                      const Vector* truth) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (m < 1 || n < 1) throw std::invalid_argument("swf_solve: empty measurement matrix");
  if (y.size() != m)
    throw std::invalid_argument("swf_solve: y length must equal row count of A");
  check_config(config, n);
  if (truth && truth->size() != n)
    throw std::invalid_argument("swf_solve: ground truth has wrong length");

  // Stage 1: support recovery.
  const SupportScores scores = support_scores(A, y);
  const std::vector<int> S0 = top_k_indices(scores, config.k_prior);

  // Stage 2: truncated spectral initialization on S0.
  const double phi2 = phi_squared(y);
  if (phi2 <= 0.0)
    throw std::invalid_argument("swf_solve: mean intensity is zero; nothing to recover");
  const InitResult init =
      spectral_initialize(A, y, S0, config.alpha_y, config.power_iters,
                          seed_chain({config.rng_seed, seed_tag::solver}));

  SolveResult result;
  Vector z = init.z0;
  Vector z_prev = z;

  auto record = [&](int t, double obj, double mu_used) {
    if (!config.record_trace) return;
    IterRecord rec;
    rec.t = t;
    rec.objective = obj;
    rec.step = mu_used;
    rec.support = nonzero_pattern(z);
    if (truth) rec.error = dist(z, *truth);
    result.trace.push_back(std::move(rec));
  };

  Vector q, w, g, z_tilde;
  GradEval ev = eval_objective_gradient(A, y, z, q, w, g);
  record(0, ev.objective, 0.0);

  int t = 0;
  result.termination = Termination::max_iters;

  // Advances z by one thresholded gradient step using mu; false on
  // numerical blow-up (z keeps the last finite iterate).
  auto advance = [&](double mu) {
    if (!ev.finite) return false;
    z_tilde = z - (mu / phi2) * g;
    if (!z_tilde.allFinite()) return false;
    z_prev = z;
    z = hard_threshold(z_tilde, config.k_prior);
    ++t;
    ev = eval_objective_gradient(A, y, z, q, w, g);
    record(t, ev.objective, mu);
    return true;
  };

  // Stage 3: z^1 = T_k(z^0 - (mu_0/phi^2) grad f(z^0)). Under the varying
  // schedule mu_0 = 0, so z^1 = T_k(z^0) = z^0.
  if (!advance(step_size(0, config.step))) {
    result.termination = Termination::diverged;
  } else {
    while (t < config.max_iters) {
      // Tolerance exit armed from t = 2: the mu_0 = 0 first step makes
      // ||z^1 - z^0|| vacuously zero under the varying schedule.
      if (t >= 2 && (z - z_prev).norm() < config.tol) {
        result.termination = Termination::tol_reached;
        break;
      }
      if (!advance(step_size(t, config.step))) {
        result.termination = Termination::diverged;
        break;
      }
    }
  }

  result.estimate = std::move(z);
  result.iterations_run = t;
  return result;
}

SolveResult wf_solve_baseline(const Matrix& A, const Vector& y, SwfConfig config,
                              const Vector* truth) {
  config.k_prior = static_cast<int>(A.cols());
  return swf_solve(A, y, config, truth);
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::tol_reached: return "tol_reached";
    case Termination::max_iters: return "max_iters";
    case Termination::diverged: return "diverged";
  }
  return "unknown";
}

}  // namespace swf
