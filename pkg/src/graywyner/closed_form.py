"""Closed-form common-rate trade-off for the symmetric Gaussian two-decoder
network.

For a bivariate Gaussian source with equal variances ``sigma2`` and
correlation ``rho``, the minimal common rate subject to an MSE budget
``delta`` on both reconstructions and a private sum-rate budget ``alpha``
depends on the operating point only through the product x = delta * e^alpha
(normalized by sigma2) and splits into three regimes:

* ``SHARED``     sigma2*(1-|rho|) <= x <= sigma2:
      rate = 0.5 * ln+[(1+|rho|) / (2*x/sigma2 + |rho| - 1)]
* ``SATURATED``  x < sigma2*(1-|rho|):
      rate = 0.5 * ln+[(1-rho^2) / (x/sigma2)^2]
* ``FREE``       x > sigma2:
      rate = 0

At the SHARED/SATURATED boundary both expressions meet at the Wyner common
information 0.5 * ln((1+|rho|)/(1-|rho|)), the rate at which the residuals
become conditionally independent.

All rates are in nats. ``e^alpha`` appears directly in the regime variable,
which forces the natural logarithm for dimensional consistency; divide by
ln 2 to plot in bits. The source variance is irrelevant up to rescaling the
distortion, and the sign of ``rho`` is irrelevant up to flipping the sign of
one source, so everything is evaluated through :func:`normalize`. That makes
the scaling and sign symmetries hold bit-exactly, not just approximately.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidParameterError
from .gaussian_core import SourcePair, _require_finite


class Regime(enum.Enum):
    """Branch of the piecewise rate formula (partition of the x > 0 axis)."""

    SHARED = "shared"
    SATURATED = "saturated"
    FREE = "free"


@dataclass(frozen=True, slots=True)
class OperatingPoint:
    """One query: MSE budget ``delta`` > 0 and private sum-rate ``alpha`` >= 0.

    ``delta = 0`` is rejected at construction: the rate diverges there, and
    divergence is reported by construction failure rather than by infinities
    propagating through arithmetic.
    """

    delta: float
    alpha: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta", _require_finite(self.delta, "delta"))
        object.__setattr__(self, "alpha", _require_finite(self.alpha, "alpha"))
        if self.delta <= 0.0:
            raise InvalidParameterError(f"delta must be > 0, got {self.delta}")
        if self.alpha < 0.0:
            raise InvalidParameterError(f"alpha must be >= 0, got {self.alpha}")


def normalize(src: SourcePair, pt: OperatingPoint) -> tuple[SourcePair, OperatingPoint]:
    """Reduce to the canonical unit-variance, nonnegative-correlation form.

    Scaling both sources by 1/sigma maps distortion delta to delta/sigma2 and
    leaves the rate unchanged; flipping the sign of Y maps rho to |rho| and
    preserves MSE. The rate is invariant under both reductions.
    """
    return (
        SourcePair(1.0, abs(src.rho)),
        OperatingPoint(pt.delta / src.sigma2, pt.alpha),
    )


def delta_e_alpha(src: SourcePair, pt: OperatingPoint) -> float:
    """The regime variable x = (delta / sigma2) * e^alpha. Overflow maps to inf."""
    try:
        scale = math.exp(pt.alpha)
    except OverflowError:
        return math.inf
    return (pt.delta / src.sigma2) * scale


def log_plus(x: float) -> float:
    """max(ln x, 0); nonpositive arguments also clamp to 0."""
    if x <= 0.0:
        return 0.0
    return max(math.log(x), 0.0)


def shared_branch_rate(rho: float, x: float) -> float:
    """SHARED-branch expression 0.5 * ln+[(1+rho) / (2x + rho - 1)].

    ``rho`` must already be the normalized |rho| and ``x`` the normalized
    regime variable. Outside the branch (2x + rho <= 1) the expression
    diverges and inf is returned.
    """
    denom = 2.0 * x + rho - 1.0
    if denom <= 0.0:
        return math.inf
    return 0.5 * log_plus((1.0 + rho) / denom)


def saturated_branch_rate(rho: float, x: float) -> float:
    """SATURATED-branch expression 0.5 * ln+[(1 - rho^2) / x^2].

    Evaluated in log space so that tiny ``x`` does not underflow in x^2.
    """
    value = 0.5 * math.log((1.0 - rho) * (1.0 + rho)) - math.log(x)
    return max(0.0, value)


def classify_regime(src: SourcePair, pt: OperatingPoint) -> Regime:
    """Regime of the operating point; the branch point belongs to SHARED.

    Both branch expressions agree at x = sigma2*(1-|rho|), so the tie-break
    only affects the reported label; SHARED is the generic interior branch.
    """
    x = delta_e_alpha(src, pt)
    rho = abs(src.rho)
    if x < 1.0 - rho:
        return Regime.SATURATED
    if x <= 1.0:
        return Regime.SHARED
    return Regime.FREE


def rate_closed_form(src: SourcePair, pt: OperatingPoint) -> float:
    """Minimal common rate in nats at the given operating point."""
    nsrc, npt = normalize(src, pt)
    x = delta_e_alpha(nsrc, npt)
    regime = classify_regime(nsrc, npt)
    if regime is Regime.FREE:
        return 0.0
    if regime is Regime.SATURATED:
        return saturated_branch_rate(nsrc.rho, x)
    return shared_branch_rate(nsrc.rho, x)


def wyner_ci(src: SourcePair) -> float:
    """Wyner common information 0.5 * ln((1+|rho|)/(1-|rho|)) in nats.

    This is the common rate at the SHARED/SATURATED boundary
    x = sigma2*(1-|rho|), where both branch expressions coincide.
    """
    r = abs(src.rho)
    return 0.5 * math.log((1.0 + r) / (1.0 - r))
