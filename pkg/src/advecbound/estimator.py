"""Estimator-style facade over the verification pipeline.

AdvectionVerifier packages problem selection, the approximate solve, and the
rigorous bound computation behind the familiar fit/predict surface: fit runs
the pipeline and stores the solution, certificate, and report as trailing-
underscore attributes; predict evaluates the approximate solution at (x, t)
points.  Parameters follow the usual convention of being stored verbatim at
construction so get_params/set_params and clone work unchanged.
"""

from __future__ import annotations

from typing import Optional, Union

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array

from . import chebyshev, galerkin, semigroup, verifier
from .errors import AdvecBoundError, DomainError
from .problems import ProblemSpec, get as get_problem


class AdvectionVerifier(BaseEstimator):
    """Fit a spectral solution of u_t + c(x) u_x = 0 with a certified error bound.

    Parameters
    ----------
    problem : str or ProblemSpec, default "example1"
        Built-in problem name, path to a problem file, or a ProblemSpec.
    N : int, default 40
        Fourier mode cutoff.
    n : int or None, default None
        Chebyshev degree in time; None picks one automatically.
    t_max : float, default 1.0
        Length of the time interval.
    tol : float, default 1e-12
        Integrator tolerance.
    period : float or None, default None
        User-asserted time period enabling the periodic bound refinement.

    Attributes
    ----------
    solution_ : ApproxSolution
    certificate_ : SemigroupCert
    report_ : VerificationReport
    """

    def __init__(
        self,
        problem: Union[str, ProblemSpec] = "example1",
        N: int = 40,
        n: Optional[int] = None,
        t_max: float = 1.0,
        tol: float = 1e-12,
        period: Optional[float] = None,
    ):
        self.problem = problem
        self.N = N
        self.n = n
        self.t_max = t_max
        self.tol = tol
        self.period = period

    def _resolve_problem(self) -> ProblemSpec:
        if isinstance(self.problem, ProblemSpec):
            return self.problem
        return get_problem(self.problem)

    def fit(self, X=None, y=None) -> "AdvectionVerifier":
        """Run the solve-and-verify pipeline; X and y are ignored."""
        problem = self._resolve_problem()
        report = verifier.verify(
            problem, self.N, self.n, self.t_max, tol=self.tol, period=self.period
        )
        if not report.verified:
            raise AdvecBoundError(f"verification failed: {report.failure}")
        self.certificate_ = semigroup.certify(problem.c, period=self.period)
        a0_values = problem.a0_provider(self.N)
        a0_mid = np.array(
            [complex(z.re.mid, z.im.mid) for z in a0_values], dtype=complex
        )
        self.solution_ = galerkin.build_solution(
            problem.c, a0_mid, self.N, report.n, self.t_max, self.tol
        )
        self.report_ = report
        return self

    def _check_fitted(self) -> None:
        if not hasattr(self, "solution_"):
            raise DomainError("this AdvectionVerifier instance is not fitted yet")

    def predict(self, X) -> np.ndarray:
        """Real part of the approximate solution at rows (x, t) of X."""
        self._check_fitted()
        points = check_array(X, ensure_2d=True, dtype=float)
        if points.shape[1] != 2:
            raise DomainError(f"expected columns (x, t), got shape {points.shape}")
        sol = self.solution_
        k = np.arange(-sol.N, sol.N + 1)
        out = np.empty(points.shape[0])
        for i, (x, t) in enumerate(points):
            coeffs = np.array(
                [chebyshev.evaluate(s, float(t)) for s in sol.modes]
            )
            out[i] = float(np.real(np.sum(coeffs * np.exp(1j * k * x))))
        return out

    def transform(self, X) -> np.ndarray:
        """Column vector of predict values, for pipeline compatibility."""
        return self.predict(X).reshape(-1, 1)

    def error_bound(self) -> float:
        """Certified sup-in-time l2 bound from the fitted report."""
        self._check_fitted()
        return self.report_.total_error
