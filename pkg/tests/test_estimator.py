"""Tests for the estimator facade: parameter handling, fitting, prediction.

Prediction oracle: at t = 0 the fitted field must reproduce the initial
state; for the rational problem that is the closed form 3 / (5 + 4 cos x)
up to the N-mode truncation tail.
"""

import numpy as np
import pytest
from sklearn.base import clone

from advecbound.chebyshev import evaluate
from advecbound.errors import AdvecBoundError, DomainError
from advecbound.estimator import AdvectionVerifier
from advecbound.galerkin import ApproxSolution
from advecbound.problems import ProblemSpec, get
from advecbound.seq import CoeffSeq
from advecbound.semigroup import SemigroupCert
from advecbound.verifier import VerificationReport


def small_fitted():
    est = AdvectionVerifier(problem="example2", N=8, n=12, t_max=0.3, tol=1e-10)
    return est.fit()


class TestParameters:
    def test_get_params_round_trip(self):
        est = AdvectionVerifier(problem="example2", N=12, n=8, t_max=0.5, tol=1e-9)
        params = est.get_params()
        assert params == {
            "problem": "example2",
            "N": 12,
            "n": 8,
            "t_max": 0.5,
            "tol": 1e-9,
            "period": None,
        }
        est2 = AdvectionVerifier().set_params(**params)
        assert est2.get_params() == params

    def test_clone_preserves_params_drops_state(self):
        est = small_fitted()
        copy = clone(est)
        assert copy.get_params() == est.get_params()
        assert not hasattr(copy, "report_")

    def test_accepts_problem_spec_instance(self):
        spec = get("example2")
        est = AdvectionVerifier(problem=spec, N=6, n=8, t_max=0.2, tol=1e-10)
        est.fit()
        assert est.report_.problem == "example2"


class TestFit:
    def test_fit_populates_state(self):
        est = small_fitted()
        assert isinstance(est.solution_, ApproxSolution)
        assert isinstance(est.certificate_, SemigroupCert)
        assert isinstance(est.report_, VerificationReport)
        assert est.report_.verified
        assert est.solution_.N == 8 and est.solution_.n == 12

    def test_error_bound_equals_report_total(self):
        est = small_fitted()
        assert est.error_bound() == est.report_.total_error
        assert 0.0 < est.error_bound() < 1.0

    def test_fit_returns_self(self):
        est = AdvectionVerifier(problem="example2", N=4, n=6, t_max=0.2, tol=1e-9)
        assert est.fit() is est

    def test_unverifiable_problem_raises(self):
        bad = ProblemSpec(
            name="coupled-strong",
            c=CoeffSeq.from_dict({-1: complex(0.3), 0: complex(1.0), 1: complex(0.3)}),
            a0_provider=get("example2").a0_provider,
            tail=get("example2").tail,
        )
        est = AdvectionVerifier(problem=bad, N=4, n=6, t_max=0.2)
        with pytest.raises(AdvecBoundError, match="verification failed"):
            est.fit()

    def test_periodic_parameter_flows_to_report(self):
        est = AdvectionVerifier(
            problem="example2", N=6, n=8, t_max=0.2, tol=1e-10, period=7.0
        )
        est.fit()
        assert est.report_.period == 7.0
        assert est.report_.periodic_total_error is not None


class TestPredict:
    def test_initial_time_matches_closed_form(self):
        est = small_fitted()
        xs = np.linspace(0.0, 2 * np.pi, 9)
        X = np.column_stack([xs, np.zeros_like(xs)])
        got = est.predict(X)
        want = 3.0 / (5.0 + 4.0 * np.cos(xs))
        # truncating the geometric series at |k| <= 8 discards l1 mass
        # 2 sum_{k>8} 2^{-k} = 2^{-7}, attained at x = pi where signs align
        assert np.max(np.abs(got - want)) <= 2.0 ** (-7) * (1 + 1e-9)

    def test_matches_internal_coefficients(self):
        est = small_fitted()
        x, t = 1.3, 0.2
        got = est.predict([[x, t]])[0]
        k = np.arange(-8, 9)
        coeffs = np.array([evaluate(s, t) for s in est.solution_.modes])
        want = float(np.real(np.sum(coeffs * np.exp(1j * k * x))))
        assert abs(got - want) <= 1e-12

    def test_transform_is_column(self):
        est = small_fitted()
        X = [[0.0, 0.0], [1.0, 0.1], [2.0, 0.2]]
        col = est.transform(X)
        assert col.shape == (3, 1)
        assert np.array_equal(col[:, 0], est.predict(X))

    def test_unfitted_raises(self):
        est = AdvectionVerifier()
        with pytest.raises(DomainError, match="not fitted"):
            est.predict([[0.0, 0.0]])
        with pytest.raises(DomainError, match="not fitted"):
            est.error_bound()

    def test_wrong_column_count_rejected(self):
        est = small_fitted()
        with pytest.raises(DomainError, match="columns"):
            est.predict([[0.0, 0.0, 0.0]])

    def test_non_numeric_rejected(self):
        est = small_fitted()
        with pytest.raises(ValueError):
            est.predict([["a", "b"]])

    def test_time_outside_domain_rejected(self):
        est = small_fitted()
        with pytest.raises(DomainError):
            est.predict([[0.0, 0.9]])
