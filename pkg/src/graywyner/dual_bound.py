"""Convex-duality lower bound on the common rate.

Weak duality with a single multiplier ``nu`` on the private sum-rate
constraint, combined with (i) the distortion bound h(X|W, X_hat) <=
0.5*ln(2*pi*e*delta) and (ii) the covariance-envelope minimization of the
``envelope_solver`` module, yields the one-dimensional dual objective (source
normalized to unit variance, rates in nats)

    l(nu) = 0.5*ln((2*pi*e)^2 (1 - rho^2)) - nu*alpha - nu*ln(2*pi*e*delta)
            + (nu/2)*ln(nu^2 / (2*nu - 1))
            - ((1 - nu)/2)*ln((2*pi*e)^2 (1 - rho)^2 / (2*nu - 1)),

finite for 1/2 < nu <= 1 and concave there, with

    l'(nu)  = ln[nu*(1 - rho) / ((2*nu - 1) * delta * e^alpha)]
    l''(nu) = -1 / (nu*(2*nu - 1)) < 0.

The envelope bound that feeds the last two terms is valid for
nu >= 1/(1+rho), equivalently lambda = 1/nu - 1 <= rho, so the certified
maximization runs over [1/(1+rho), 1]. The stationary point is

    nu* = x / (2x - 1 + rho),        x = delta * e^alpha,

which lies inside the interval exactly when 1 - rho <= x <= 1 (the SHARED
regime). For x < 1 - rho the derivative is nonnegative on the whole interval
and the maximum sits at the boundary nu = 1. Either way the maximal value
reproduces the closed-form rate, which is the content of the lower-bound side
of the trade-off theorem and is what :func:`lower_bound` certifies.

The maximization is performed analytically; a golden-section search over the
same interval exists purely as an independent numerical check that guards
against transcription errors in ``l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .closed_form import (
    OperatingPoint,
    Regime,
    classify_regime,
    delta_e_alpha,
    normalize,
)
from .errors import CertificationError, DomainError, RegimeError
from .gaussian_core import LOG_TWO_PI_E, TWO_PI_E, SourcePair, _require_finite

TWO_PI_E_SQ = TWO_PI_E * TWO_PI_E


@dataclass(frozen=True, slots=True)
class DualVariable:
    """Multiplier ``nu`` in (1/2, 1]; outside, 2*nu - 1 <= 0 makes l infinite."""

    nu: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "nu", _require_finite(self.nu, "nu"))
        if not 0.5 < self.nu <= 1.0:
            raise DomainError(f"nu must lie in (1/2, 1], got {self.nu}")


@dataclass(frozen=True, slots=True)
class DualCertificate:
    """Maximizing multiplier, certified lower-bound value (nats), and whether
    the maximizer was an interval boundary rather than a stationary point."""

    nu_star: DualVariable
    value: float
    clamped_to_boundary: bool


def _nu_value(nu: DualVariable | float) -> float:
    if isinstance(nu, DualVariable):
        return nu.nu
    return DualVariable(float(nu)).nu


def _require_normalized(src: SourcePair) -> None:
    if src.sigma2 != 1.0 or src.rho < 0.0:
        raise DomainError(
            "dual objective expects a normalized source (sigma2 = 1, rho >= 0); "
            "call closed_form.normalize first"
        )


def nu_to_lambda(nu: DualVariable | float) -> float:
    """Envelope weight lambda = 1/nu - 1 associated with a multiplier."""
    return 1.0 / _nu_value(nu) - 1.0


def lambda_to_nu(lam: float) -> float:
    """Multiplier nu = 1/(1 + lambda) associated with an envelope weight."""
    return 1.0 / (1.0 + float(lam))


def dual_objective(
    nu: DualVariable | float, src: SourcePair, pt: OperatingPoint
) -> float:
    """The dual objective l(nu) in nats, for a normalized source."""
    n = _nu_value(nu)
    _require_normalized(src)
    rho = src.rho
    t = 2.0 * n - 1.0
    return (
        0.5 * math.log(TWO_PI_E_SQ * (1.0 - rho) * (1.0 + rho))
        - n * pt.alpha
        - n * (LOG_TWO_PI_E + math.log(pt.delta))
        + 0.5 * n * math.log(n * n / t)
        - 0.5 * (1.0 - n) * math.log(TWO_PI_E_SQ * (1.0 - rho) ** 2 / t)
    )


def dual_derivative(
    nu: DualVariable | float, src: SourcePair, pt: OperatingPoint
) -> float:
    """dl/dnu = ln[nu*(1-rho)/((2*nu-1)*delta*e^alpha)], in nats."""
    n = _nu_value(nu)
    _require_normalized(src)
    t = 2.0 * n - 1.0
    return math.log(n * (1.0 - src.rho) / t) - math.log(pt.delta) - pt.alpha


def dual_second_derivative(nu: DualVariable | float) -> float:
    """d2l/dnu2 = -1/(nu*(2*nu-1)); strictly negative, hence l is concave."""
    n = _nu_value(nu)
    return -1.0 / (n * (2.0 * n - 1.0))


def nu_star(src: SourcePair, pt: OperatingPoint) -> DualVariable:
    """Interior stationary point nu* = x/(2x - 1 + rho) of the SHARED regime.

    Raises :class:`RegimeError` outside SHARED: in SATURATED the maximizer is
    the boundary nu = 1, and in FREE the stationary point leaves the interval.
    """
    _require_normalized(src)
    regime = classify_regime(src, pt)
    if regime is not Regime.SHARED:
        raise RegimeError(
            f"stationary point only exists in the SHARED regime, not {regime.name}"
        )
    x = delta_e_alpha(src, pt)
    raw = x / (2.0 * x - 1.0 + src.rho)
    return DualVariable(min(1.0, raw))


INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-10) -> tuple[float, float]:
    """Derivative-free 1D maximization on [lo, hi] to bracket width ``tol``.

    Deterministic iteration count; returns (argmax estimate, value there).
    """
    if hi <= lo:
        return lo, f(lo)
    dist = hi - lo
    if dist <= tol:
        mid = 0.5 * (lo + hi)
        return mid, f(mid)
    n = int(math.ceil(math.log(tol / dist) / math.log(INV_PHI)))
    c = lo + INV_PHI_SQ * dist
    d = lo + INV_PHI * dist
    yc = f(c)
    yd = f(d)
    for _ in range(max(n - 1, 0)):
        if yc > yd:
            hi = d
            d = c
            yd = yc
            dist = INV_PHI * dist
            c = lo + INV_PHI_SQ * dist
            yc = f(c)
        else:
            lo = c
            c = d
            yc = yd
            dist = INV_PHI * dist
            d = lo + INV_PHI * dist
            yd = f(d)
    return (c, yc) if yc >= yd else (d, yd)


def lower_bound(
    src: SourcePair,
    pt: OperatingPoint,
    *,
    cross_check: bool = True,
    search_tol: float = 1e-10,
) -> DualCertificate:
    """Certified dual lower bound max_{nu in [1/(1+rho), 1]} l(nu), clamped at 0.

    The maximizer is computed analytically (nu* in SHARED, the boundary nu = 1
    in SATURATED, the left edge in FREE where the bound is vacuous) and, when
    ``cross_check`` is set, re-derived by golden-section search on
    [1/(1+rho) + 1e-12, 1]; disagreement beyond 1e-7 in nu or 1e-9 in value
    raises :class:`CertificationError`.

    In the SHARED and SATURATED regimes the returned value equals the
    closed-form rate (tested to 1e-9); weak duality makes it a true lower
    bound everywhere.
    """
    nsrc, npt = normalize(src, pt)
    rho = nsrc.rho
    x = delta_e_alpha(nsrc, npt)
    left_edge = 1.0 / (1.0 + rho)
    if x < 1.0 - rho:
        nu_opt = 1.0
        clamped = True
    elif x <= 1.0:
        nu_opt = min(1.0, x / (2.0 * x - 1.0 + rho))
        clamped = False
    else:
        # Zero-rate region: the stationary point exits the interval on the
        # left; the bound degenerates to <= 0 and is clamped by log+.
        nu_opt = left_edge
        clamped = True
    value = max(0.0, dual_objective(nu_opt, nsrc, npt))
    if cross_check:
        lo = min(1.0, left_edge + 1e-12)
        if 1.0 - lo > 0.0:
            nu_num, val_num = golden_section_max(
                lambda n: dual_objective(n, nsrc, npt), lo, 1.0, search_tol
            )
        else:
            nu_num, val_num = 1.0, dual_objective(1.0, nsrc, npt)
        val_num = max(0.0, val_num)
        if abs(nu_num - nu_opt) > 1e-7 or abs(val_num - value) > 1e-9:
            raise CertificationError(
                "golden-section check disagrees with the analytic maximizer: "
                f"nu {nu_num} vs {nu_opt}, value {val_num} vs {value}"
            )
    return DualCertificate(DualVariable(nu_opt), value, clamped)


def envelope_closed_form(lam: float, rho: float) -> float:
    """Closed-form value of the covariance-envelope minimization, in nats.

    For 0 <= lam <= |rho| < 1:

        0.5*ln(1/(1 - lam^2))
            - (lam/2)*ln((2*pi*e)^2 (1 - |rho|)^2 (1 + lam)/(1 - lam)).

    This is the quantity the dual chain consumes at lambda = 1/nu - 1; beyond
    lam > |rho| the underlying inequality does not hold and
    :class:`DomainError` is raised.
    """
    lam = _require_finite(lam, "lam")
    r = abs(_require_finite(rho, "rho"))
    if not 0.0 <= lam <= r < 1.0:
        raise DomainError(
            f"envelope bound requires 0 <= lam <= |rho| < 1, got lam={lam}, |rho|={r}"
        )
    return 0.5 * math.log(1.0 / ((1.0 - lam) * (1.0 + lam))) - 0.5 * lam * math.log(
        TWO_PI_E_SQ * (1.0 - r) ** 2 * (1.0 + lam) / (1.0 - lam)
    )
