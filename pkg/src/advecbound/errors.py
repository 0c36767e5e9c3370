"""Exception types raised by the library.

Every failure mode that callers are expected to handle gets its own class so
that the driver can distinguish "the input is malformed" from "the method's
hypotheses do not hold for this problem" from "a numeric operation left its
domain".
"""


class AdvecBoundError(Exception):
    """Base class for all library errors."""


class DivByZeroInterval(AdvecBoundError):
    """Division by an interval whose enclosure contains zero."""


class ExpOverflow(AdvecBoundError):
    """Exponential of a bound so large the result would overflow a double."""


class DomainError(AdvecBoundError):
    """Argument outside the mathematical domain of the operation."""


class StiffnessError(AdvecBoundError):
    """Adaptive integrator drove the step size below the representable floor."""


class DissipativityUnverified(AdvecBoundError):
    """The dissipativity margin could not be verified positive.

    Raised when the interval lower bound of ``|c0| - 2 * sum_{m != 0} |c_m|``
    is not strictly positive, so no growth certificate can be issued.
    """


class CoefficientNotReal(AdvecBoundError):
    """Velocity coefficients fail the conjugate-symmetry check c_{-m} = conj(c_m)."""


class LemmaHypothesisFails(AdvecBoundError):
    """A diagnostic quantity requires a hypothesis (kappa < 1/2) that does not hold."""


class PeriodRequired(AdvecBoundError):
    """A time-periodic growth factor was requested without a known period."""


class CoefficientMismatch(AdvecBoundError):
    """Stored spectral data is inconsistent with the requested operation."""


class ParseError(AdvecBoundError):
    """A problem definition file could not be parsed."""
