import numpy as np
import pytest

import swf


def test_samplers_are_deterministic():
    a = swf.sample_sparse_signal(100, 10, 7)
    b = swf.sample_sparse_signal(100, 10, 7)
    assert np.array_equal(a.values, b.values)
    assert a.support == b.support
    assert np.count_nonzero(a.values) == 10

    A = swf.sample_measurement_vectors(5, 20, 3)
    assert A.shape == (20, 5)
    assert np.array_equal(A, swf.sample_measurement_vectors(5, 20, 3))


def test_measure_noiseless_quadratic():
    x = swf.sample_sparse_signal(30, 4, 11)
    A = swf.sample_measurement_vectors(30, 80, 12)
    ens = swf.measure(x, A, 0.0, 0)
    assert ens.m == 80
    np.testing.assert_allclose(ens.intensities, (A @ x.values) ** 2, rtol=0, atol=0)


def test_gradient_matches_finite_differences():
    x = swf.sample_sparse_signal(6, 3, 21)
    A = swf.sample_measurement_vectors(6, 15, 22)
    y = swf.measure(x, A, 0.3, 23).intensities
    rng = np.random.default_rng(0)
    z = rng.standard_normal(6)
    g = swf.gradient(z, A, y)
    h = 1e-5
    fd = np.empty_like(g)
    for j in range(6):
        zp, zm = z.copy(), z.copy()
        zp[j] += h
        zm[j] -= h
        fd[j] = (swf.objective(zp, A, y) - swf.objective(zm, A, y)) / (2 * h)
    assert np.linalg.norm(fd - g) / np.linalg.norm(g) < 1e-6


def test_hard_threshold_and_metrics():
    v = np.array([3.0, -5.0, 2.0, 0.0])
    out = swf.hard_threshold(v, 2)
    np.testing.assert_array_equal(out, [3.0, -5.0, 0.0, 0.0])

    x = np.array([1.0, -2.0, 0.5])
    assert swf.dist(x, -x) == 0.0
    assert swf.nmse(2 * x, x) == pytest.approx(1.0)
    assert swf.classify_success(9.9e-6)
    assert not swf.classify_success(1e-5)


def test_step_schedule():
    paper = swf.StepSchedule.varying()
    assert swf.step_size(0, paper) == 0.0
    assert swf.step_size(74, paper) == 0.1
    assert swf.step_size(5, swf.StepSchedule.constant(0.05)) == 0.05


def test_end_to_end_recovery():
    n, k, m = 200, 5, 500
    x = swf.sample_sparse_signal(n, k, 42)
    A = swf.sample_measurement_vectors(n, m, 43)
    ens = swf.measure(x, A, 0.0, 0)

    config = swf.SwfConfig()
    config.k_prior = k
    config.rng_seed = 1
    result = swf.swf_solve(A, ens.intensities, config, truth=x.values)

    assert swf.nmse(result.estimate, x.values) < 1e-5
    assert result.termination == "tol_reached"
    assert len(result.trace) == result.iterations_run + 1
    errors = [rec.error for rec in result.trace]
    assert errors[-1] < errors[0]
    assert all(len(rec.support) == k for rec in result.trace[1:])


def test_wf_baseline_equals_full_prior():
    n, k, m = 40, 40, 240
    x = swf.sample_sparse_signal(n, k, 5)
    A = swf.sample_measurement_vectors(n, m, 6)
    y = swf.measure(x, A, 0.0, 0).intensities
    config = swf.SwfConfig()
    config.k_prior = n
    config.rng_seed = 9
    a = swf.swf_solve(A, y, config)
    b = swf.wf_solve_baseline(A, y, config)
    assert np.array_equal(a.estimate, b.estimate)
    assert a.iterations_run == b.iterations_run


def test_invalid_arguments_raise():
    with pytest.raises(ValueError):
        swf.sample_sparse_signal(10, 0, 1)
    with pytest.raises(ValueError):
        swf.hard_threshold(np.ones(3), 4)
