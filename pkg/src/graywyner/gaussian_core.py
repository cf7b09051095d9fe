"""Exact small-matrix Gaussian algebra.

Covariances, the Loewner order, Schur complements, differential entropies and
mutual informations for a bivariate source (X, Y) and an auxiliary variable W
of dimension one or two. Every other module is built on these operations, so
they stay deliberately small: dimensions never exceed 2 + 2, all inverses are
closed form with explicit determinant guards, and all values are plain floats.

Conventions
-----------
* Information quantities are in nats throughout. Divide by ln 2 for bits.
* PSD checks use the absolute tolerance ``EPS_PSD`` = 1e-12. Matrices here are
  2x2 with O(1) entries, so absolute tolerance is safe.
* Auxiliary covariances carry a unit diagonal. Rescaling W changes no mutual
  information, and pinning the scale removes a spurious degree of freedom from
  every downstream search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateConditionalError,
    InvalidParameterError,
    NonPositiveDeterminantError,
    PsdViolationError,
    SingularAuxiliaryError,
)

#: Absolute tolerance for positive-semidefiniteness checks.
EPS_PSD = 1e-12

#: Determinant guard below which a 2x2 auxiliary covariance is treated as
#: singular and the pseudo-inverse fallback is used.
DET_GUARD = 1e-12

TWO_PI_E = 2.0 * math.pi * math.e
LOG_TWO_PI_E = math.log(TWO_PI_E)


def _require_finite(value: float, name: str) -> float:
    x = float(value)
    if not math.isfinite(x):
        raise InvalidParameterError(f"{name} must be finite, got {value!r}")
    return x


@dataclass(frozen=True, slots=True)
class CovarianceMatrix2:
    """Symmetric 2x2 matrix ``[[a11, a12], [a12, a22]]``.

    Symmetry is structural (one off-diagonal field). Construction enforces
    finiteness only; definiteness is a property of the values and is queried
    through :func:`is_psd`. Keeping indefinite values representable is what
    makes differences of covariances (Loewner-order tests) expressible.
    """

    a11: float
    a12: float
    a22: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a11", _require_finite(self.a11, "a11"))
        object.__setattr__(self, "a12", _require_finite(self.a12, "a12"))
        object.__setattr__(self, "a22", _require_finite(self.a22, "a22"))

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a12

    @property
    def trace(self) -> float:
        return self.a11 + self.a22

    def __sub__(self, other: "CovarianceMatrix2") -> "CovarianceMatrix2":
        return CovarianceMatrix2(
            self.a11 - other.a11, self.a12 - other.a12, self.a22 - other.a22
        )

    def as_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a12, self.a22]], dtype=float)


@dataclass(frozen=True, slots=True)
class SourcePair:
    """Zero-mean bivariate Gaussian source with equal per-coordinate variance.

    ``sigma2`` is the common variance (strictly positive), ``rho`` the
    correlation coefficient with ``|rho| < 1`` strictly: the perfectly
    correlated case collapses the source to one dimension and every quantity
    downstream degenerates, so it is rejected at construction.
    """

    sigma2: float
    rho: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma2", _require_finite(self.sigma2, "sigma2"))
        object.__setattr__(self, "rho", _require_finite(self.rho, "rho"))
        if self.sigma2 <= 0.0:
            raise InvalidParameterError(f"sigma2 must be > 0, got {self.sigma2}")
        if abs(self.rho) >= 1.0:
            raise InvalidParameterError(f"|rho| must be < 1, got {self.rho}")

    def covariance(self) -> CovarianceMatrix2:
        return CovarianceMatrix2(self.sigma2, self.rho * self.sigma2, self.sigma2)


def is_psd(k: CovarianceMatrix2) -> bool:
    """Positive semidefiniteness within ``EPS_PSD``. Total function."""
    return (
        k.a11 >= -EPS_PSD
        and k.a22 >= -EPS_PSD
        and k.det >= -EPS_PSD * max(1.0, k.a11 * k.a22)
    )


def loewner_leq(ka: CovarianceMatrix2, kb: CovarianceMatrix2) -> bool:
    """Loewner order: ``ka <= kb`` iff ``kb - ka`` is PSD (within EPS_PSD)."""
    return is_psd(kb - ka)


def entropy_gaussian(k: CovarianceMatrix2 | float, n: int | None = None) -> float:
    """Differential entropy 0.5 * ln((2*pi*e)^n * det K) in nats.

    Accepts a ``CovarianceMatrix2`` (n = 2) or a scalar variance (n = 1); a
    mismatching explicit ``n`` is rejected. Raises
    :class:`NonPositiveDeterminantError` when det K <= 0.
    """
    if isinstance(k, CovarianceMatrix2):
        if n not in (None, 2):
            raise InvalidParameterError(f"n must be 2 for a 2x2 covariance, got {n}")
        det = k.det
        if det <= 0.0:
            raise NonPositiveDeterminantError(
                f"entropy undefined: det = {det} is not positive"
            )
        return 0.5 * math.log(TWO_PI_E * TWO_PI_E * det)
    if n not in (None, 1):
        raise InvalidParameterError(f"n must be 1 for a scalar variance, got {n}")
    variance = _require_finite(k, "variance")
    if variance <= 0.0:
        raise NonPositiveDeterminantError(
            f"entropy undefined: variance = {variance} is not positive"
        )
    return 0.5 * math.log(TWO_PI_E * variance)


@dataclass(frozen=True, eq=False)
class JointGaussianSystem:
    """Covariance description of (X, Y, W) with auxiliary W of dimension 1 or 2.

    ``kw`` must carry a unit diagonal (see module conventions) and the stacked
    (2+m)-dimensional covariance must be PSD, which is verified at
    construction via the Schur complement of ``kw``. The reconstructions of X
    and Y are never materialized; their effect enters only through conditional
    variances (see the achievability module).
    """

    kxy: CovarianceMatrix2
    kw: np.ndarray
    kxyw: np.ndarray

    def __post_init__(self) -> None:
        kw = np.array(self.kw, dtype=float)
        kxyw = np.array(self.kxyw, dtype=float)
        if kw.ndim != 2 or kw.shape[0] != kw.shape[1] or kw.shape[0] not in (1, 2):
            raise InvalidParameterError(f"kw must be 1x1 or 2x2, got shape {kw.shape}")
        m = kw.shape[0]
        if kxyw.shape != (2, m):
            raise InvalidParameterError(
                f"kxyw must have shape (2, {m}), got {kxyw.shape}"
            )
        if not (np.all(np.isfinite(kw)) and np.all(np.isfinite(kxyw))):
            raise InvalidParameterError("system covariances must be finite")
        if not np.allclose(kw, kw.T, rtol=0.0, atol=EPS_PSD):
            raise InvalidParameterError("kw must be symmetric")
        if np.max(np.abs(np.diag(kw) - 1.0)) > EPS_PSD:
            raise InvalidParameterError("kw must have a unit diagonal")
        if m == 2 and kw[0, 1] * kw[1, 0] > 1.0 + EPS_PSD:
            raise PsdViolationError(
                f"kw is not PSD: off-diagonal {kw[0, 1]} exceeds 1 in magnitude"
            )
        kw.setflags(write=False)
        kxyw.setflags(write=False)
        object.__setattr__(self, "kw", kw)
        object.__setattr__(self, "kxyw", kxyw)
        if not is_psd(self.kxy):
            raise PsdViolationError("kxy is not PSD")
        # Stacked PSD <=> kw PSD, cross block in range(kw), and the Schur
        # complement kxy - C kw^+ C^T PSD. The first two are checked above and
        # inside the conditioning step; the last one here.
        conditional = conditional_covariance(self)
        if not is_psd(conditional):
            raise PsdViolationError(
                "stacked covariance of (X, Y, W) is not PSD: Schur complement "
                f"({conditional.a11}, {conditional.a12}, {conditional.a22})"
            )

    @property
    def m(self) -> int:
        return self.kw.shape[0]


def conditional_covariance(sys: JointGaussianSystem) -> CovarianceMatrix2:
    """Covariance of (X, Y) given W: the Schur complement K_XY - C K_W^-1 C^T.

    Inverses are explicit 1x1 / 2x2 with a determinant guard of ``DET_GUARD``.
    A singular ``kw`` falls back to the Moore-Penrose pseudo-inverse, which is
    exact when the cross block lies in the range of ``kw``; if the residual of
    that range condition exceeds tolerance, :class:`SingularAuxiliaryError` is
    raised because conditioning is then inconsistent.
    """
    kw = sys.kw
    c = sys.kxyw
    if sys.m == 1:
        d = kw[0, 0]
        if d > DET_GUARD:
            adj = np.outer(c[:, 0], c[:, 0]) / d
        else:
            adj = _pinv_adjustment(kw, c)
    else:
        det = kw[0, 0] * kw[1, 1] - kw[0, 1] * kw[1, 0]
        if det > DET_GUARD:
            inv = (
                np.array([[kw[1, 1], -kw[0, 1]], [-kw[1, 0], kw[0, 0]]], dtype=float)
                / det
            )
            adj = c @ inv @ c.T
        else:
            adj = _pinv_adjustment(kw, c)
    kxy = sys.kxy
    return CovarianceMatrix2(
        kxy.a11 - adj[0, 0], kxy.a12 - 0.5 * (adj[0, 1] + adj[1, 0]), kxy.a22 - adj[1, 1]
    )


def _pinv_adjustment(kw: np.ndarray, c: np.ndarray) -> np.ndarray:
    """C K_W^+ C^T for singular kw, with the range-condition residual check."""
    pinv = np.linalg.pinv(kw, rcond=1e-10)
    residual = c - c @ (pinv @ kw)
    scale = max(1.0, float(np.max(np.abs(c))))
    if float(np.max(np.abs(residual))) > 1e-9 * scale:
        raise SingularAuxiliaryError(
            "kw is singular and the cross-covariance does not lie in its range "
            f"(residual {float(np.max(np.abs(residual))):.3e})"
        )
    return c @ pinv @ c.T


def mutual_information_xy_w(sys: JointGaussianSystem) -> float:
    """I(X, Y; W) = 0.5 * ln(det K_XY / det K_XY|W) in nats."""
    det_kxy = sys.kxy.det
    if det_kxy <= 0.0:
        raise NonPositiveDeterminantError(
            f"det K_XY = {det_kxy} is not positive; source is degenerate"
        )
    conditional = conditional_covariance(sys)
    det_cond = conditional.det
    if det_cond <= 0.0:
        raise DegenerateConditionalError(
            f"conditional covariance has det = {det_cond}; mutual information diverges"
        )
    return 0.5 * math.log(det_kxy / det_cond)
