#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fd_oracle.hpp"
#include "swf/metrics.hpp"
#include "swf/model.hpp"
#include "swf/random.hpp"
#include "swf/solver.hpp"
#include "swf/spectral.hpp"

using namespace swf;

namespace {

struct Instance {
  SignalVector x;
  Matrix A;
  Vector y;
};

Instance noiseless_instance(int n, int k, int m, std::uint64_t seed) {
  Instance inst;
  inst.x = sample_sparse_signal(n, k, seed_chain({seed, 1}));
  inst.A = sample_measurement_vectors(n, m, seed_chain({seed, 2}));
  inst.y = measure(inst.x, inst.A, 0.0, 0).intensities;
  return inst;
}

}  // namespace

TEST_CASE("objective: global minimum and sign ambiguity") {
  const Instance inst = noiseless_instance(12, 3, 40, 5);
  CHECK(objective(inst.x.values, inst.A, inst.y) == doctest::Approx(0.0).epsilon(1e-24));
  CHECK(objective(-inst.x.values, inst.A, inst.y) ==
        objective(inst.x.values, inst.A, inst.y));
}

TEST_CASE("objective: hand arithmetic") {
  Matrix A(1, 2);
  A << 1.0, 0.0;
  Vector y(1);
  y << 4.0;
  Vector z(2);
  z << 1.0, 0.0;
  CHECK(objective(z, A, y) == 4.5);
  CHECK_THROWS_AS(objective(Vector::Zero(3), A, y), std::invalid_argument);
}

TEST_CASE("gradient: zero at the origin and at the truth") {
  const Instance inst = noiseless_instance(10, 4, 30, 6);
  CHECK(gradient(Vector::Zero(10), inst.A, inst.y).isZero(0.0));
  CHECK(gradient(inst.x.values, inst.A, inst.y).norm() < 1e-10);
}

TEST_CASE("gradient matches central finite differences on random instances") {
  Rng rng(424242);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng.below(7));   // <= 8
    const int m = 3 + static_cast<int>(rng.below(18));  // <= 20
    const Matrix A = sample_measurement_vectors(n, m, rng.next_u64());
    const SignalVector x = sample_sparse_signal(n, std::max(1, n / 2), rng.next_u64());
    const Vector y = measure(x, A, 0.3, rng.next_u64()).intensities;
    Vector z(n);
    for (int j = 0; j < n; ++j) z[j] = rng.normal();
    CHECK(swf_test::gradient_relative_error(z, A, y) < 1e-6);
  }
}

TEST_CASE("hard_threshold: magnitudes, ties, and saturation") {
  Vector v(4);
  v << 3.0, -5.0, 2.0, 0.0;
  Vector expected(4);
  expected << 3.0, -5.0, 0.0, 0.0;
  CHECK(hard_threshold(v, 2) == expected);

  Vector ones(3);
  ones << 1.0, 1.0, 1.0;
  Vector kept(3);
  kept << 1.0, 1.0, 0.0;
  CHECK(hard_threshold(ones, 2) == kept);

  CHECK(hard_threshold(v, 4) == v);
  CHECK_THROWS_AS(hard_threshold(v, 5), std::invalid_argument);
  CHECK_THROWS_AS(hard_threshold(v, 0), std::invalid_argument);
}

TEST_CASE("step_size: varying schedule values and cap") {
  const StepSchedule paper = StepSchedule::varying();
  CHECK(step_size(0, paper) == 0.0);
  CHECK(std::abs(step_size(1, paper) - 0.0015135) < 1e-6);
  CHECK(step_size(73, paper) < 0.1);
  CHECK(step_size(74, paper) == 0.1);  // cap active: 330 ln(1.25) ~ 73.6
  CHECK(step_size(100000, paper) == 0.1);

  const StepSchedule fixed = StepSchedule::constant(0.37);
  CHECK(step_size(0, fixed) == 0.37);
  CHECK(step_size(12345, fixed) == 0.37);
  CHECK_THROWS_AS(step_size(-1, paper), std::invalid_argument);
}

TEST_CASE("swf_iterate: mu = 0 reduces to pure thresholding") {
  const Instance inst = noiseless_instance(9, 3, 25, 7);
  Vector z(9);
  Rng rng(3);
  for (int j = 0; j < 9; ++j) z[j] = rng.normal();
  CHECK(swf_iterate(z, inst.A, inst.y, 3, 0.0, 1.0) == hard_threshold(z, 3));
  CHECK_THROWS_AS(swf_iterate(z, inst.A, inst.y, 3, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("swf_iterate: noiseless truth is a fixed point") {
  const Instance inst = noiseless_instance(9, 3, 40, 8);
  const double phi_sq = phi_squared(inst.y);
  const Vector next = swf_iterate(inst.x.values, inst.A, inst.y, 3, 0.1, phi_sq);
  CHECK((next - inst.x.values).norm() < 1e-12);
}

TEST_CASE("swf_iterate: one hand-computed step with a visible tie-break") {
  Matrix A(2, 3);
  A << 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
  Vector y(2);
  y << 4.0, 1.0;
  Vector z(3);
  z << 1.0, 1.0, 1.0;
  // q = (1, 1); w = ((1-4)*1, 0) = (-3, 0); grad = (2/2)(-3 a_1) = (-3, 0, 0).
  // z - (0.5/2.5) grad = (1.6, 1, 1); T_2 keeps indices 0 and 1.
  const Vector out = swf_iterate(z, A, y, 2, 0.5, 2.5);
  CHECK(out[0] == doctest::Approx(1.6).epsilon(1e-15));
  CHECK(out[1] == 1.0);
  CHECK(out[2] == 0.0);
}

TEST_CASE("swf_solve: recovers a mid-size instance and keeps trace invariants") {
  const Instance inst = noiseless_instance(200, 5, 500, 9);
  SwfConfig config;
  config.k_prior = 5;
  config.rng_seed = 17;
  const SolveResult result = swf_solve(inst.A, inst.y, config, &inst.x.values);

  CHECK(nmse(result.estimate, inst.x.values) < 1e-5);
  CHECK(result.termination == Termination::tol_reached);
  CHECK(result.iterations_run <= config.max_iters);
  CHECK(result.trace.size() == static_cast<std::size_t>(result.iterations_run) + 1);
  for (const IterRecord& rec : result.trace) {
    CHECK(rec.objective >= 0.0);
    if (rec.t >= 1) CHECK(static_cast<int>(rec.support.size()) == config.k_prior);
    REQUIRE(rec.error.has_value());
  }
  CHECK(*result.trace.back().error < *result.trace.front().error);
}

TEST_CASE("swf_solve: deterministic in the config seed") {
  const Instance inst = noiseless_instance(100, 4, 300, 10);
  SwfConfig config;
  config.k_prior = 4;
  config.rng_seed = 5;
  const SolveResult a = swf_solve(inst.A, inst.y, config);
  const SolveResult b = swf_solve(inst.A, inst.y, config);
  CHECK(a.estimate == b.estimate);
  CHECK(a.iterations_run == b.iterations_run);
}

TEST_CASE("swf_solve with k_prior = n equals the WF baseline") {
  const Instance inst = noiseless_instance(40, 40, 240, 11);
  SwfConfig config;
  config.k_prior = 40;
  config.rng_seed = 23;
  const SolveResult sparse_path = swf_solve(inst.A, inst.y, config);
  const SolveResult baseline = wf_solve_baseline(inst.A, inst.y, config);
  CHECK(sparse_path.estimate == baseline.estimate);
  CHECK(sparse_path.iterations_run == baseline.iterations_run);
}

TEST_CASE("swf_solve: sign of the generating signal is unobservable") {
  const Instance inst = noiseless_instance(60, 4, 240, 12);
  SignalVector neg = inst.x;
  neg.values = -inst.x.values;
  const Vector y_neg = measure(neg, inst.A, 0.0, 0).intensities;
  CHECK(inst.y == y_neg);

  SwfConfig config;
  config.k_prior = 4;
  config.rng_seed = 3;
  const SolveResult result = swf_solve(inst.A, inst.y, config);
  CHECK(dist(result.estimate, inst.x.values) == dist(result.estimate, -inst.x.values));
}

TEST_CASE("swf_solve: iteration cap is honored") {
  const Instance inst = noiseless_instance(50, 3, 150, 13);
  SwfConfig config;
  config.k_prior = 3;
  config.max_iters = 3;
  const SolveResult result = swf_solve(inst.A, inst.y, config);
  CHECK(result.iterations_run == 3);
  CHECK(result.termination == Termination::max_iters);
}

TEST_CASE("swf_solve: invalid arguments propagate") {
  const Instance inst = noiseless_instance(20, 3, 60, 14);
  SwfConfig config;
  config.k_prior = 21;
  CHECK_THROWS_AS(swf_solve(inst.A, inst.y, config), std::invalid_argument);
  config.k_prior = 3;
  config.tol = 0.0;
  CHECK_THROWS_AS(swf_solve(inst.A, inst.y, config), std::invalid_argument);
  config.tol = 1e-7;
  CHECK_THROWS_AS(swf_solve(inst.A, Vector::Zero(60), config), std::invalid_argument);
}

TEST_CASE("constant-step solve contracts once near the truth") {
  int monotone_ok = 0;
  std::vector<double> ratios;
  for (int t = 0; t < 10; ++t) {
    const Instance inst = noiseless_instance(100, 5, 300, 100 + t);
    SwfConfig config;
    config.k_prior = 5;
    config.step = StepSchedule::constant(0.1);
    config.rng_seed = t;
    const SolveResult result = swf_solve(inst.A, inst.y, config, &inst.x.values);
    const double xnorm = inst.x.values.norm();
    bool monotone = true;
    for (std::size_t i = 5; i + 1 < result.trace.size(); ++i) {
      const double d0 = *result.trace[i].error;
      const double d1 = *result.trace[i + 1].error;
      if (d1 > d0 * (1.0 + 1e-9)) monotone = false;
      if (d0 <= 0.1 * xnorm && d0 > 1e-12 * xnorm && d1 > 0.0) ratios.push_back(d1 / d0);
    }
    monotone_ok += monotone ? 1 : 0;
  }
  CHECK(monotone_ok >= 9);
  REQUIRE(!ratios.empty());
  std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
  CHECK(ratios[ratios.size() / 2] <= 0.9);
}

TEST_CASE("WF baseline: recovery at m = 6n and failure when underdetermined") {
  int successes = 0;
  for (int t = 0; t < 100; ++t) {
    const Instance inst = noiseless_instance(100, 100, 600, 700 + t);
    SwfConfig config;
    config.rng_seed = t;
    const SolveResult result = wf_solve_baseline(inst.A, inst.y, config);
    if (classify_success(nmse(result.estimate, inst.x.values))) ++successes;
  }
  CHECK(successes >= 90);

  int failures = 0;
  for (int t = 0; t < 20; ++t) {
    const Instance inst = noiseless_instance(60, 60, 30, 900 + t);
    SwfConfig config;
    config.rng_seed = t;
    config.max_iters = 500;
    const SolveResult result = wf_solve_baseline(inst.A, inst.y, config);
    CHECK(result.estimate.allFinite());  // divergence guard keeps the last finite iterate
    if (nmse(result.estimate, inst.x.values) >= 1e-1) ++failures;
  }
  CHECK(failures >= 15);
}
