"""Eigenvalue counts for rectangular tori, the Klein bottle and the
projective plane, by enumerating the eigenfunction families directly.

Frequencies are carried as integers: an eigenvalue (2 pi)^2 K / L with
integer key K is inside when 4 pi^2 (K / L) <= t, evaluated exactly as in
:mod:`lattice_weyl.lattice` so that the torus counts here agree with
``lattice.count`` to the last point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .lattice import FOUR_PI_SQ, REL_EPS, _check_t


@dataclass(frozen=True)
class SurfaceCount:
    """Counts at one t for a surface ("KB" or "PP") and its covering torus.

    ``identity_residual`` is N_KB - N_T12 / 2 for the Klein bottle and
    N_PP - N_T22 / 4 - 1/4 for the projective plane.  For PP,
    ``n_torus_scaled`` holds N_T11(4t), which must equal ``n_torus``.
    """

    t: float
    surface: str
    n_torus: int
    n_surface: int
    identity_residual: float
    n_torus_scaled: int | None = None

    @property
    def within_window(self) -> bool:
        ok = abs(self.identity_residual) <= 0.5
        if self.n_torus_scaled is not None:
            ok = ok and self.n_torus_scaled == self.n_torus
        return ok


def _max_key(t: float, den: int) -> int:
    """Largest integer K >= 0 with 4 pi^2 (K / den) <= t (1 + REL_EPS)."""
    lim = t * (1.0 + REL_EPS)
    k = int(lim / FOUR_PI_SQ * den)
    while FOUR_PI_SQ * ((k + 1) / den) <= lim:
        k += 1
    while k > 0 and FOUR_PI_SQ * (k / den) > lim:
        k -= 1
    return k


def _fraction(v) -> Fraction:
    if isinstance(v, float):
        f = Fraction(v).limit_denominator(10**6)
        if float(f) != v:
            f = Fraction(v)
    else:
        f = Fraction(v)
    if f <= 0:
        raise ValueError(f"frequency step must be positive, got {v!r}")
    return f


def count_torus_rect(width_modes, height_modes, t: float) -> int:
    """#{(j, k) in Z^2 : (2 pi)^2 ((p j)^2 + (q k)^2) <= t} for rational p, q.

    (1, 1/2) is the [0,1] x [0,2] torus, (1/2, 1/2) the [0,2] x [0,2] one.
    """
    t = _check_t(t)
    p, q = _fraction(width_modes), _fraction(height_modes)
    # (p j)^2 + (q k)^2 = ((a d j)^2 + (c b k)^2) / (b d)^2
    a, b, c, d = p.numerator, p.denominator, q.numerator, q.denominator
    cj, ck, den = (a * d) ** 2, (c * b) ** 2, (b * d) ** 2
    kmax = _max_key(t, den)
    total = 0
    j = 0
    while cj * j * j <= kmax:
        rem = kmax - cj * j * j
        n = 2 * (math.isqrt(rem // ck)) + 1
        total += n if j == 0 else 2 * n
        j += 1
    return total


def _count_abs_le(kmax: int, coef: int, step: int = 1) -> int:
    """#{k > 0, k divisible by step : coef k^2 <= kmax}."""
    return math.isqrt(kmax // coef) // step


def count_klein_bottle(t: float) -> int:
    """N_KB(t): e^{2 pi i k y / 2} for even k, plus one function per (j > 0, k).

    Eigenvalues are (2 pi)^2 (j^2 + k^2 / 4) = 4 pi^2 (4 j^2 + k^2) / 4.
    """
    t = _check_t(t)
    kmax = _max_key(t, 4)
    total = 1 + 2 * _count_abs_le(kmax, 1, 2)
    j = 1
    while 4 * j * j <= kmax:
        total += 2 * math.isqrt(kmax - 4 * j * j) + 1
        j += 1
    return total


def count_projective_plane(t: float) -> int:
    """N_PP(t) from the four families: the constant, even k > 0 with j = 0,
    even j > 0 with k = 0, and all j, k > 0.

    Eigenvalues are (2 pi)^2 ((j/2)^2 + (k/2)^2) = 4 pi^2 (j^2 + k^2) / 4.
    """
    t = _check_t(t)
    kmax = _max_key(t, 4)
    total = 1 + 2 * _count_abs_le(kmax, 1, 2)
    j = 1
    while j * j + 1 <= kmax:
        total += math.isqrt(kmax - j * j)
        j += 1
    return total


def identity_residuals(t_grid) -> list[SurfaceCount]:
    """KB and PP entries (in that order) for every t in ``t_grid``."""
    out = []
    for t in t_grid:
        t = _check_t(t)
        n12 = count_torus_rect(1, Fraction(1, 2), t)
        nkb = count_klein_bottle(t)
        out.append(SurfaceCount(t, "KB", n12, nkb, nkb - n12 / 2))
        n22 = count_torus_rect(Fraction(1, 2), Fraction(1, 2), t)
        n11 = count_torus_rect(1, 1, 4.0 * t)
        npp = count_projective_plane(t)
        out.append(SurfaceCount(t, "PP", n22, npp, npp - n22 / 4 - 0.25, n11))
    return out
