"""Tests for the adaptive Runge-Kutta integrator with dense output.

Accuracy oracles: the rotation y' = -i y has the closed form y(t) = e^{-i t},
anchored below through 60-digit values of cos(1) and sin(1); a random linear
system is cross-checked against scipy's DOP853 at tight tolerances.
"""

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from advecbound.dopri import DenseTrajectory, SolveResult, StiffnessError, solve, step_once
from advecbound.interval import DomainError

# 60-digit anchors for e^{-i} = cos(1) - i sin(1)
COS1 = 0.540302305868139717400936607442976603732310420617922227670097
SIN1 = 0.841470984807896506652502321630298999622563060798371065672752
EXP_MINUS_I = complex(COS1, -SIN1)


def rotation(t, y):
    return -1j * y


class TestEndpointAccuracy:
    def test_rotation_endpoint(self):
        res = solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-12, atol=1e-15)
        assert abs(res.y_end[0] - EXP_MINUS_I) <= 1e-11

    def test_zero_initial_state_stays_zero(self):
        res = solve(rotation, 0.0, 1.0, [0.0 + 0.0j], rtol=1e-12, atol=1e-15)
        assert res.y_end[0] == 0.0

    def test_tighter_tolerance_is_more_accurate(self):
        loose = solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-6, atol=1e-9)
        tight = solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-12, atol=1e-15)
        assert abs(tight.y_end[0] - EXP_MINUS_I) < abs(loose.y_end[0] - EXP_MINUS_I)

    def test_deterministic_rerun(self):
        a = solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-12, atol=1e-15)
        b = solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-12, atol=1e-15)
        assert a.y_end[0] == b.y_end[0]
        assert a.n_steps == b.n_steps
        assert a.n_rhs_evals == b.n_rhs_evals

    def test_evaluation_accounting(self):
        res = solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-12, atol=1e-15)
        # six fresh stages per attempted step plus the initial-step probe;
        # far fewer than ten per accepted step unless rejections dominate
        assert res.n_rhs_evals >= 6 * res.n_steps
        assert res.n_rhs_evals <= 10 * res.n_steps + 10

    def test_scipy_cross_check_linear_system(self):
        rng = np.random.default_rng(20240817)
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        y0 = rng.standard_normal(4) + 1j * rng.standard_normal(4)

        def f(t, y):
            return np.sin(t) * (m @ y)

        ours = solve(f, 0.0, 2.0, y0, rtol=1e-12, atol=1e-14)
        ref = solve_ivp(
            f, (0.0, 2.0), y0, method="DOP853", rtol=1e-12, atol=1e-14
        )
        assert ref.success
        assert np.max(np.abs(ours.y_end - ref.y[:, -1])) <= 1e-9


class TestDenseOutput:
    def test_dense_accuracy_on_fine_grid(self):
        res = solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-12, atol=1e-15)
        worst = max(
            abs(res.trajectory(float(t))[0] - np.exp(-1j * t))
            for t in np.linspace(0.0, 1.0, 257)
        )
        assert worst <= 1e-11

    def test_dense_matches_endpoint_exactly(self):
        res = solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-12, atol=1e-15)
        assert res.trajectory(1.0)[0] == res.y_end[0]

    def test_dense_matches_initial_state(self):
        res = solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-12, atol=1e-15)
        assert abs(res.trajectory(0.0)[0] - 1.0) <= 1e-14

    def test_at_times_stacks_scalar_queries(self):
        res = solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-10, atol=1e-13)
        ts = [0.0, 0.25, 0.5, 1.0]
        block = res.trajectory.at_times(ts)
        assert block.shape == (4, 1)
        for row, t in zip(block, ts):
            assert row[0] == res.trajectory(t)[0]

    def test_query_outside_domain_rejected(self):
        res = solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-10, atol=1e-13)
        with pytest.raises(DomainError):
            res.trajectory(1.0000001)
        with pytest.raises(DomainError):
            res.trajectory(-1e-12)

    def test_trajectory_present_without_t_eval(self):
        res = solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-10, atol=1e-13)
        assert isinstance(res.trajectory, DenseTrajectory)
        assert res.t_hit is None and res.y_hit is None


class TestTEval:
    def test_hits_exact_times_accurately(self):
        ts = [0.0, 0.3, 0.77, 1.0]
        res = solve(
            rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-12, atol=1e-15, t_eval=ts
        )
        assert res.trajectory is None
        assert np.array_equal(res.t_hit, np.array(ts))
        for t, row in zip(ts, res.y_hit):
            assert abs(row[0] - np.exp(-1j * t)) <= 1e-11

    def test_t_eval_outside_domain_rejected(self):
        with pytest.raises(DomainError):
            solve(
                rotation, 0.0, 1.0, [1.0 + 0.0j],
                rtol=1e-10, atol=1e-13, t_eval=[0.5, 1.5],
            )


class TestStepOnce:
    def test_single_step_accuracy_scales_at_local_order_six(self):
        # a fifth-order pair commits a local (one-step) error of O(h^6), so
        # halving h should divide the true error by about 2^6 = 64
        y0 = np.array([1.0 + 0.0j])
        errs = {}
        for h in (0.1, 0.05, 0.025):
            y_new, _, _ = step_once(rotation, 0.0, y0, h)
            errs[h] = abs(y_new[0] - np.exp(-1j * h))
        assert 48.0 <= errs[0.1] / errs[0.05] <= 80.0
        assert 48.0 <= errs[0.05] / errs[0.025] <= 80.0

    def test_error_estimate_dominates_true_error_here(self):
        y0 = np.array([1.0 + 0.0j])
        for h in (0.1, 0.05):
            y_new, err_vec, _ = step_once(rotation, 0.0, y0, h)
            assert abs(err_vec[0]) >= abs(y_new[0] - np.exp(-1j * h))

    def test_first_same_as_last_stage_reuse(self):
        y0 = np.array([1.0 + 0.0j])
        y_new, _, k7 = step_once(rotation, 0.0, y0, 0.1)
        # feeding k7 back as the next step's first stage must reproduce the
        # from-scratch computation bit for bit
        a = step_once(rotation, 0.1, y_new, 0.1, k1=k7)
        b = step_once(rotation, 0.1, y_new, 0.1, k1=rotation(0.1, y_new))
        assert np.array_equal(a[0], b[0])
        assert np.array_equal(a[1], b[1])


class TestFailureModes:
    def test_step_budget_exhaustion(self):
        with pytest.raises(StiffnessError, match="budget"):
            solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-12, atol=1e-15, max_steps=3)

    def test_step_underflow_near_singularity(self):
        def blows_up(t, y):
            return np.array([1.0 / (1.0 - t)], dtype=complex)

        with pytest.raises(StiffnessError, match="underflow"):
            solve(blows_up, 0.0, 1.0, [0.0j], rtol=1e-10, atol=1e-12, max_steps=100_000)

    def test_reversed_time_interval_rejected(self):
        with pytest.raises(DomainError):
            solve(rotation, 1.0, 1.0, [1.0 + 0.0j], rtol=1e-10, atol=1e-13)
        with pytest.raises(DomainError):
            solve(rotation, 1.0, 0.5, [1.0 + 0.0j], rtol=1e-10, atol=1e-13)

    def test_bad_tolerances_rejected(self):
        with pytest.raises(DomainError):
            solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=0.0, atol=1e-13)
        with pytest.raises(DomainError):
            solve(rotation, 0.0, 1.0, [1.0 + 0.0j], rtol=1e-10, atol=-1e-13)
