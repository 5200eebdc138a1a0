#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "swf/types.hpp"

namespace swf {

/// Step-size rule for the gradient loop. The varying schedule
/// mu_t = min((1 - exp(-t/330))/2, 0.1) ramps up from zero to avoid
/// early stagnation in local minima; the cap activates at t = 74.
struct StepSchedule {
  enum class Kind { paper_varying, constant };
  Kind kind = Kind::paper_varying;
  double mu = 0.1;  // used by Kind::constant

  static StepSchedule varying() { return {Kind::paper_varying, 0.0}; }
  static StepSchedule constant(double mu) { return {Kind::constant, mu}; }
};

double step_size(int t, const StepSchedule& schedule);

struct SwfConfig {
  int k_prior = 1;
  double alpha_y = 3.0;
  int max_iters = 1000;
  double tol = 1e-7;  // on ||z^t - z^{t-1}||
  StepSchedule step = StepSchedule::varying();
  int power_iters = 100;
  std::uint64_t rng_seed = 0;
  bool record_trace = true;
};

enum class Termination { tol_reached, max_iters, diverged };

struct IterRecord {
  int t = 0;
  double objective = 0.0;
  double step = 0.0;  // step size used in the update that produced this iterate
  std::vector<int> support;
  std::optional<double> error;  // dist(z^t, x) when ground truth is supplied
};

struct SolveResult {
  Vector estimate;
  int iterations_run = 0;
  Termination termination = Termination::max_iters;
  std::vector<IterRecord> trace;  // entry 0 is the spectral initialization
};

/// Intensity least-squares objective f(z) = (1/2m) sum_i ((a_i.z)^2 - y_i)^2.
double objective(const Vector& z, const Matrix& A, const Vector& y);

/// Gradient of the objective: (2/m) sum_i ((a_i.z)^2 - y_i)(a_i.z) a_i.
Vector gradient(const Vector& z, const Matrix& A, const Vector& y);

/// Keeps the k largest-magnitude entries (ties toward the lowest index),
/// zeroing the rest.
Vector hard_threshold(const Vector& v, int k);

/// One thresholded gradient step: T_k(z - (mu/phi_sq) grad f(z)).
Vector swf_iterate(const Vector& z, const Matrix& A, const Vector& y, int k,
                   double mu, double phi_sq);

/// Full three-stage solve: support recovery, truncated spectral
/// initialization on the recovered support, thresholded gradient descent.
/// Pass the ground truth to get a per-iteration error column in the trace.
SolveResult swf_solve(const Matrix& A, const Vector& y, const SwfConfig& config,
                      const Vector* truth = nullptr);

/// Plain Wirtinger flow: full-support initialization, no sparsity
/// constraint. Identical to swf_solve with k_prior = n.
SolveResult wf_solve_baseline(const Matrix& A, const Vector& y, SwfConfig config,
                              const Vector* truth = nullptr);

const char* to_string(Termination t);

}  // namespace swf
