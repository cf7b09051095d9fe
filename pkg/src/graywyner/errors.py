"""Semantic exception hierarchy.

Public functions never raise bare ValueError / ArithmeticError; every failure
mode has a named class so callers (and the CLI exit-code mapping) can
distinguish bad inputs, numerical degeneracies, and failed certifications.
"""


class GrayWynerError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameterError(GrayWynerError, ValueError):
    """Inputs violate a constructor or call contract (domain, shape, finiteness)."""


class DomainError(GrayWynerError, ValueError):
    """A mathematical function was evaluated outside its stated domain."""


class NonPositiveDeterminantError(GrayWynerError):
    """Differential entropy requested for a covariance with det <= 0."""


class SingularAuxiliaryError(GrayWynerError):
    """Auxiliary covariance is numerically singular and the pseudo-inverse
    consistency check failed, so conditioning is not well defined."""


class DegenerateConditionalError(GrayWynerError):
    """Conditional covariance has non-positive determinant; the mutual
    information diverges."""


class PsdViolationError(GrayWynerError):
    """A constructed joint covariance is not positive semidefinite."""


class RegimeError(GrayWynerError):
    """Operation invoked at an operating point outside its regime of validity."""


class InfeasibleError(GrayWynerError):
    """No candidate satisfying the rate constraint was found."""


class CertificationError(GrayWynerError):
    """An independent cross-check (dual vs. closed form vs. oracle) failed."""
