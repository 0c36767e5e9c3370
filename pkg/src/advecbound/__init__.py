"""Verified error bounds for spectral solutions of periodic advection.

The package solves u_t + c(x) u_x = 0 with periodic boundary conditions by a
Fourier Galerkin truncation integrated adaptively in time and fitted with
Chebyshev series, then wraps the approximation in a mathematically rigorous
sup-in-time l2 error bound built from outward-rounded interval arithmetic
and a certified semigroup growth estimate.

Typical use:

    from advecbound import problems, verifier
    report = verifier.verify(problems.example1(), N=120, n=15, t_max=0.1)
    print(report.total_error)

or, through the estimator facade:

    from advecbound import AdvectionVerifier
    model = AdvectionVerifier(problem="example2", N=60, t_max=0.5).fit()
    print(model.error_bound())
"""

from . import chebyshev, dopri, galerkin, problems, semigroup, seq, tails, verifier
from .errors import (
    AdvecBoundError,
    CoefficientMismatch,
    CoefficientNotReal,
    DissipativityUnverified,
    DivByZeroInterval,
    DomainError,
    ExpOverflow,
    LemmaHypothesisFails,
    ParseError,
    PeriodRequired,
    StiffnessError,
)
from .interval import ComplexInterval, Interval
from .problems import ProblemSpec, example1, example2, example3
from .seq import CoeffSeq
from .semigroup import SemigroupCert
from .tails import TailBound
from .verifier import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "AdvecBoundError",
    "AdvectionVerifier",
    "CoeffSeq",
    "CoefficientMismatch",
    "CoefficientNotReal",
    "ComplexInterval",
    "DissipativityUnverified",
    "DivByZeroInterval",
    "DomainError",
    "ExpOverflow",
    "Interval",
    "LemmaHypothesisFails",
    "ParseError",
    "PeriodRequired",
    "ProblemSpec",
    "SemigroupCert",
    "StiffnessError",
    "TailBound",
    "VerificationReport",
    "chebyshev",
    "dopri",
    "example1",
    "example2",
    "example3",
    "galerkin",
    "problems",
    "semigroup",
    "seq",
    "tails",
    "verifier",
]


def __getattr__(name: str):
    # the estimator pulls in scikit-learn; keep that import off the hot path
    if name == "AdvectionVerifier":
        from .estimator import AdvectionVerifier

        return AdvectionVerifier
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
