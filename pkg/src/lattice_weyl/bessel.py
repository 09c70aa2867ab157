"""Bessel functions J0, J1, J2 of a real nonnegative argument.

Two regimes: the ascending power series below ``series_cutoff`` and the
Hankel asymptotic expansion above it.  In the large-argument regime J2 is
obtained from J0 and J1 by the three-term recurrence.

The array kernel :func:`jn_array` is what the lattice sums use; the scalar
functions below wrap it with argument validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQRT_HALF = math.sqrt(0.5)
SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)

# cos/sin of the Hankel phase offset nu*pi/2 + pi/4 for nu = 0, 1, 2
_PHASE = {
    0: (SQRT_HALF, SQRT_HALF),
    1: (-SQRT_HALF, SQRT_HALF),
    2: (-SQRT_HALF, -SQRT_HALF),
}
_MAX_SERIES_TERMS = 80
_MAX_HANKEL_TERMS = 60


@dataclass(frozen=True)
class BesselRegimeConfig:
    """Regime selection for :func:`bessel_j`.

    ``asymptotic_terms=None`` truncates the Hankel expansion adaptively at
    its smallest term (or once terms drop below 1e-17), which reaches
    ``target_abs_error`` for the default cutoff.
    """

    series_cutoff: float = 12.0
    asymptotic_terms: int | None = None
    target_abs_error: float = 1e-10

    def __post_init__(self):
        if not (self.series_cutoff > 0 and math.isfinite(self.series_cutoff)):
            raise ValueError("series_cutoff must be positive and finite")
        if not self.target_abs_error > 0:
            raise ValueError("target_abs_error must be positive")
        if self.asymptotic_terms is not None and self.asymptotic_terms < 1:
            raise ValueError("asymptotic_terms must be >= 1")


DEFAULT_CONFIG = BesselRegimeConfig()


def _power_series(nu: int, x: np.ndarray) -> np.ndarray:
    half = 0.5 * x
    term = half**nu / math.factorial(nu)
    total = term.copy()
    q = -half * half
    for k in range(1, _MAX_SERIES_TERMS):
        term = term * q / (k * (k + nu))
        total += term
        if not np.any(np.abs(term) > 1e-17 * np.maximum(np.abs(total), 1e-300)):
            break
    return total


def _hankel_pq(nu: int, x: np.ndarray, nterms: int | None):
    """Sums P and Q of the Hankel expansion, truncated at the smallest term."""
    mu = 4.0 * nu * nu
    p = np.ones_like(x)
    q = np.zeros_like(x)
    coef = 1.0
    prev = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)
    inv = 1.0 / x
    power = np.ones_like(x)
    limit = _MAX_HANKEL_TERMS if nterms is None else nterms
    for k in range(1, limit):
        coef *= (mu - (2 * k - 1) ** 2) / (8.0 * k)
        if coef == 0.0:
            break
        power = power * inv
        term = coef * power
        mag = np.abs(term)
        if nterms is None:
            active &= mag < np.abs(prev)
            if not active.any():
                break
        sign = -1.0 if (k // 2) % 2 else 1.0
        contrib = np.where(active, sign * term, 0.0)
        if k % 2 == 0:
            p += contrib
        else:
            q += contrib
        prev = term
        if nterms is None:
            active &= mag > 1e-17
            if not active.any():
                break
    return p, q


def _hankel(nu: int, x: np.ndarray, nterms: int | None) -> np.ndarray:
    p, q = _hankel_pq(nu, x, nterms)
    cphi, sphi = _PHASE[nu]
    c, s = np.cos(x), np.sin(x)
    # cos/sin(x - phi) expanded so the large-x reduction is done by libm on x alone
    cos_chi = c * cphi + s * sphi
    sin_chi = s * cphi - c * sphi
    return np.sqrt(2.0 / (math.pi * x)) * (p * cos_chi - q * sin_chi)


def jn_array(order: int, x, config: BesselRegimeConfig = DEFAULT_CONFIG) -> np.ndarray:
    """J_order(x) for an array of nonnegative x, order in {0, 1, 2}.

    No argument validation beyond the order; callers pass clean data.
    """
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order!r}")
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < config.series_cutoff
    if small.any():
        out[small] = _power_series(order, x[small])
    big = ~small
    if big.any():
        xb = x[big]
        if order == 2:
            j0 = _hankel(0, xb, config.asymptotic_terms)
            j1 = _hankel(1, xb, config.asymptotic_terms)
            out[big] = (2.0 / xb) * j1 - j0
        else:
            out[big] = _hankel(order, xb, config.asymptotic_terms)
    return out


def _check_order(order):
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order!r}")


def bessel_j(order: int, x: float, config: BesselRegimeConfig = DEFAULT_CONFIG) -> float:
    """J_order(x) for order 0, 1, 2 and finite x >= 0."""
    _check_order(order)
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise ValueError(f"x must be finite and >= 0, got {x!r}")
    return float(jn_array(order, np.array([x]), config)[0])


def jalpha_asymptotic_leading(order: int, x: float) -> float:
    """Leading large-x term sqrt(2/pi) x^-1/2 cos(x - order*pi/2 - pi/4)."""
    _check_order(order)
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"x must be finite and > 0, got {x!r}")
    cphi, sphi = _PHASE[order]
    return SQRT_2_OVER_PI / math.sqrt(x) * (math.cos(x) * cphi + math.sin(x) * sphi)


def j2_asymptotic_leading(x: float) -> float:
    """-sqrt(2/pi) x^-1/2 cos(x - pi/4), the leading term of J2."""
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"x must be finite and > 0, got {x!r}")
    return -SQRT_2_OVER_PI / math.sqrt(x) * (math.cos(x) + math.sin(x)) * SQRT_HALF
