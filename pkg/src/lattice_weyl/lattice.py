"""Lattice points in the ellipse family E_t and the spectrum jumps of N(t).

A point n of Z^2 lies in E_t when its eigenvalue 4 pi^2 Q_c(n) is <= t,
with Q_c(n) = ((n.v1)/a1)^2 + ((n.v2)/a2)^2.  The closed region is used
throughout, and points within a relative ``REL_EPS`` of the boundary count
as inside; this absorbs the rounding in user-supplied values such as
``(2*pi*5)**2``.

For an axis-aligned form whose coefficients are small-denominator
rationals (the unit disk, the a1=2, a2=1/2 ellipse) values are carried as
exact integer keys, so equal eigenvalues group exactly.  Otherwise shells
are grouped with relative tolerance ``SHELL_RTOL``; genuinely distinct
eigenvalues closer than that are merged.
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

FOUR_PI_SQ = (2.0 * math.pi) ** 2
REL_EPS = 1e-12
SHELL_RTOL = 1e-12
BRUTE_FORCE_BUDGET = 10**8
SHELL_POINT_BUDGET = 10**9
_MAX_DENOMINATOR = 1000
_ROW_BLOCK = 4096
_CHUNK_POINTS = 2**22
_DENSE_KEY_LIMIT = 2**27


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured point budget."""


def point_budget(default: int) -> int:
    """Budget from ``LATTICE_POINT_BUDGET`` if set, else ``default``."""
    raw = os.environ.get("LATTICE_POINT_BUDGET")
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(float(raw))
    except ValueError:
        raise ValueError(f"LATTICE_POINT_BUDGET must be a number, got {raw!r}") from None
    if value <= 0:
        raise ValueError("LATTICE_POINT_BUDGET must be positive")
    return value


def _as_small_fraction(c: float) -> Fraction | None:
    f = Fraction(c).limit_denominator(_MAX_DENOMINATOR)
    if f > 0 and abs(float(f) - c) <= 4 * math.ulp(c):
        return f
    return None


@dataclass(frozen=True)
class QuadForm:
    """Q(i, j) = A i^2 + B i j + C j^2, optionally with an exact integer form.

    ``exact = (p, q, den)`` means Q(i, j) = (p i^2 + q j^2) / den exactly.
    """

    A: float
    B: float
    C: float
    exact: tuple[int, int, int] | None = None

    @classmethod
    def diagonal(cls, c1: float, c2: float) -> "QuadForm":
        f1, f2 = _as_small_fraction(c1), _as_small_fraction(c2)
        exact = None
        if f1 is not None and f2 is not None:
            den = f1.denominator * f2.denominator // math.gcd(f1.denominator, f2.denominator)
            exact = (int(f1 * den), int(f2 * den), den)
            c1, c2 = float(f1), float(f2)
        return cls(float(c1), 0.0, float(c2), exact)

    @property
    def symmetric(self) -> bool:
        return self.B == 0.0

    def keys(self, i, j):
        p, q, _ = self.exact
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        return p * i * i + q * j * j

    def value(self, i, j):
        """Q(i, j) as float; the canonical evaluation used by every predicate."""
        if self.exact is not None:
            return self.keys(i, j) / self.exact[2]
        i = np.asarray(i, dtype=float)
        j = np.asarray(j, dtype=float)
        return self.A * i * i + self.B * i * j + self.C * j * j

    def inside(self, i, j, scale: float, bound: float):
        return scale * self.value(i, j) <= bound * (1.0 + REL_EPS)

    def _extent(self, scale, bound):
        s = bound * (1.0 + REL_EPS) / scale
        det4 = 4.0 * self.A * self.C - self.B * self.B
        imax = math.sqrt(4.0 * self.C * s / det4)
        jmax = math.sqrt(4.0 * self.A * s / det4)
        return s, det4, imax, jmax


@dataclass(frozen=True)
class EllipseForm:
    """Ellipse family data: semi-axis scales a1, a2 and basis rotation theta.

    v1 = (cos theta, sin theta), v2 = (-sin theta, cos theta).
    """

    a1: float = 1.0
    a2: float = 1.0
    theta: float = 0.0

    def __post_init__(self):
        for name in ("a1", "a2"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a finite positive number, got {v!r}")
        if not math.isfinite(self.theta):
            raise ValueError("theta must be finite")

    @classmethod
    def unit_disk(cls) -> "EllipseForm":
        return cls(1.0, 1.0, 0.0)

    @classmethod
    def from_dict(cls, data: dict) -> "EllipseForm":
        unknown = set(data) - {"a1", "a2", "theta"}
        if unknown:
            raise ValueError(f"unknown EllipseForm fields: {sorted(unknown)}")
        return cls(float(data.get("a1", 1.0)), float(data.get("a2", 1.0)),
                   float(data.get("theta", 0.0)))

    def to_dict(self) -> dict:
        return {"a1": self.a1, "a2": self.a2, "theta": self.theta}

    @property
    def area_factor(self) -> float:
        """a1 * a2; the area of E_t is area_factor * t / (4 pi)."""
        return self.a1 * self.a2

    @property
    def is_unit_disk(self) -> bool:
        return self.a1 == 1.0 and self.a2 == 1.0

    def _quad(self, c1: float, c2: float) -> QuadForm:
        if self.theta == 0.0 or c1 == c2:
            return QuadForm.diagonal(c1, c2)
        c, s = math.cos(self.theta), math.sin(self.theta)
        return QuadForm(c * c * c1 + s * s * c2, 2.0 * c * s * (c1 - c2), s * s * c1 + c * c * c2)

    @functools.cached_property
    def counting_form(self) -> QuadForm:
        """Q_c(n) = ((n.v1)/a1)^2 + ((n.v2)/a2)^2."""
        return self._quad(1.0 / self.a1**2, 1.0 / self.a2**2)

    @functools.cached_property
    def series_form(self) -> QuadForm:
        """Q_s(n) = (a1 n.v1)^2 + (a2 n.v2)^2, the dual form of the Bessel series."""
        return self._quad(self.a1**2, self.a2**2)


@dataclass(frozen=True, eq=False)
class SpectrumShells:
    """Jumps t_k (strictly increasing, t_0 = 0) of a counting function with
    multiplicities m_k, enumerated up to ``t_max``.

    ``keys``/``den`` hold the exact values (t_k = scale * keys / den) when the
    form is exact; ``scale`` is 4 pi^2 for eigenvalue shells and 1 for
    shells of a bare quadratic form.
    """

    t: np.ndarray
    m: np.ndarray
    t_max: float
    scale: float = FOUR_PI_SQ
    keys: np.ndarray | None = None
    den: int = 1

    def __len__(self):
        return len(self.t)

    def count_upto(self, t: float) -> int:
        """Sum of m_k over t_k <= t, with the same boundary slack as :func:`count`."""
        if t > self.t_max:
            raise ValueError(f"t={t} beyond enumerated range t_max={self.t_max}")
        idx = np.searchsorted(self.t, t * (1.0 + REL_EPS), side="right")
        return int(self.m[:idx].sum())

    def pairs(self):
        return list(zip(self.t.tolist(), self.m.tolist()))


def _check_t(t, name="t"):
    if isinstance(t, bool):
        raise TypeError(f"{name} must be a real number")
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise ValueError(f"{name} must be finite and >= 0, got {t!r}")
    return t


def _row_ranges(quad: QuadForm, scale: float, bound: float, js: np.ndarray):
    """Inclusive column ranges [lo, hi] of inside points for each row j.

    Floating-point estimates from the row quadratic, then every boundary
    candidate is re-tested with the canonical predicate.  Empty rows come
    back with lo > hi.
    """
    s, det4, _, _ = quad._extent(scale, bound)
    jf = js.astype(float)
    disc = np.maximum(4.0 * quad.A * s - det4 * jf * jf, 0.0)
    root = np.sqrt(disc)
    centre = -quad.B * jf
    lo = np.floor((centre - root) / (2.0 * quad.A)).astype(np.int64)
    hi = np.ceil((centre + root) / (2.0 * quad.A)).astype(np.int64)

    def inside(i):
        return quad.inside(i, js, scale, bound)

    while True:
        m = (lo <= hi) & ~inside(lo)
        if not m.any():
            break
        lo[m] += 1
    while True:
        m = (lo <= hi) & ~inside(hi)
        if not m.any():
            break
        hi[m] -= 1
    nonempty = lo <= hi
    while True:
        m = nonempty & inside(lo - 1)
        if not m.any():
            break
        lo[m] -= 1
    while True:
        m = nonempty & inside(hi + 1)
        if not m.any():
            break
        hi[m] += 1
    return lo, hi


def _count_quad(quad: QuadForm, scale: float, bound: float) -> int:
    _, _, _, jmax = quad._extent(scale, bound)
    jm = int(math.floor(jmax)) + 1
    total = 0
    for start in range(-jm, jm + 1, _ROW_BLOCK):
        js = np.arange(start, min(start + _ROW_BLOCK, jm + 1), dtype=np.int64)
        lo, hi = _row_ranges(quad, scale, bound, js)
        total += int(np.maximum(hi - lo + 1, 0).sum())
    return total


def count(form: EllipseForm, t: float) -> int:
    """N(t): the number of n in Z^2 with 4 pi^2 Q_c(n) <= t."""
    t = _check_t(t)
    estimate = form.area_factor * t / (4.0 * math.pi)
    if estimate > 2.0**62:
        raise OverflowError(f"count at t={t!r} exceeds the 64-bit integer range")
    return _count_quad(form.counting_form, FOUR_PI_SQ, t)


def remainder(form: EllipseForm, t: float) -> float:
    """D(t) = N(t) - a1 a2 t / (4 pi)."""
    t = _check_t(t)
    return count(form, t) - form.area_factor * t / (4.0 * math.pi)


def brute_force_count(form: EllipseForm, t: float, budget: int | None = None) -> int:
    """N(t) by scanning every lattice point of the ellipse's bounding box."""
    t = _check_t(t)
    quad = form.counting_form
    _, _, imax, jmax = quad._extent(FOUR_PI_SQ, t)
    im, jm = int(math.floor(imax)) + 1, int(math.floor(jmax)) + 1
    budget = point_budget(BRUTE_FORCE_BUDGET) if budget is None else budget
    candidates = (2 * im + 1) * (2 * jm + 1)
    if candidates > budget:
        raise BudgetExceeded(f"brute force needs {candidates} candidates, budget {budget}")
    ii = np.arange(-im, im + 1, dtype=np.int64)
    total = 0
    step = max(1, 2**22 // len(ii))
    for start in range(-jm, jm + 1, step):
        js = np.arange(start, min(start + step, jm + 1), dtype=np.int64)
        I, J = np.meshgrid(ii, js)
        total += int(np.count_nonzero(quad.inside(I, J, FOUR_PI_SQ, t)))
    return total


def _estimate_points(quad: QuadForm, scale: float, bound: float) -> float:
    s, det4, imax, jmax = quad._extent(scale, bound)
    return 2.0 * math.pi * s / math.sqrt(det4) + 4.0 * (imax + jmax) + 4.0


def _point_chunks(quad: QuadForm, scale: float, bound: float):
    """Yield (cols, rows, weights) for all inside points, in bounded chunks.

    Symmetric forms only enumerate the quadrant i, j >= 0, with weights
    counting the sign flips.
    """
    _, _, _, jmax = quad._extent(scale, bound)
    jm = int(math.floor(jmax)) + 1
    js = np.arange(0 if quad.symmetric else -jm, jm + 1, dtype=np.int64)
    lo, hi = _row_ranges(quad, scale, bound, js)
    if quad.symmetric:
        lo = np.maximum(lo, 0)
    n = np.maximum(hi - lo + 1, 0)
    cum = np.cumsum(n)
    a = 0
    while a < len(js):
        b = int(np.searchsorted(cum, (cum[a - 1] if a else 0) + _CHUNK_POINTS, side="right"))
        b = max(b, a + 1)
        nn = n[a:b]
        total = int(nn.sum())
        if total:
            rows = np.repeat(js[a:b], nn)
            offs = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(nn) - nn, nn)
            cols = np.repeat(lo[a:b], nn) + offs
            if quad.symmetric:
                w = (np.where(cols > 0, 2, 1) * np.where(rows > 0, 2, 1)).astype(np.int64)
            else:
                w = np.ones(total, dtype=np.int64)
            yield cols, rows, w
        a = b


@functools.lru_cache(maxsize=16)
def _shells_cached(quad: QuadForm, scale: float, bound: float, budget: int):
    est = _estimate_points(quad, scale, bound)
    if est > budget:
        raise BudgetExceeded(f"shell enumeration needs ~{est:.3g} points, budget {budget}")
    if quad.exact is not None:
        p, q, den = quad.exact
        kmax = int(math.floor(bound * (1.0 + REL_EPS) / scale * den)) + 2 * max(p, q)
        dense = kmax <= _DENSE_KEY_LIMIT
        if dense:
            mult_by_key = np.zeros(kmax + 1, dtype=np.int64)
        parts_k, parts_m = [], []
        for cols, rows, w in _point_chunks(quad, scale, bound):
            keys = quad.keys(cols, rows)
            if dense:
                mult_by_key += np.bincount(keys, weights=w, minlength=kmax + 1).astype(np.int64)
            else:
                u, inv = np.unique(keys, return_inverse=True)
                parts_k.append(u)
                parts_m.append(np.bincount(inv, weights=w).astype(np.int64))
        if dense:
            keys = np.flatnonzero(mult_by_key)
            mult = mult_by_key[keys]
        else:
            keys, inv = np.unique(np.concatenate(parts_k), return_inverse=True)
            mult = np.bincount(inv, weights=np.concatenate(parts_m)).astype(np.int64)
        t = scale * (keys / den)
    else:
        vs, ws = [], []
        for cols, rows, w in _point_chunks(quad, scale, bound):
            vs.append(quad.value(cols, rows))
            ws.append(w)
        v, w = np.concatenate(vs), np.concatenate(ws)
        order = np.argsort(v, kind="stable")
        tv = scale * v[order]
        w = w[order]
        new = np.empty(len(tv), dtype=bool)
        new[0] = True
        new[1:] = np.diff(tv) > SHELL_RTOL * np.maximum(tv[1:], 1e-300)
        t = tv[new]
        mult = np.bincount(np.cumsum(new) - 1, weights=w).astype(np.int64)
        keys, den = None, 1
    for arr in (t, mult, keys):
        if arr is not None:
            arr.setflags(write=False)
    return SpectrumShells(t=t, m=mult, t_max=bound, scale=scale, keys=keys, den=den)


def quad_shells(quad: QuadForm, scale: float, bound: float, budget: int | None = None) -> SpectrumShells:
    """Shells of ``scale * Q`` up to ``bound`` for an arbitrary quadratic form."""
    budget = point_budget(SHELL_POINT_BUDGET) if budget is None else budget
    return _shells_cached(quad, float(scale), float(bound), int(budget))


def spectrum_shells(form: EllipseForm, t_max: float, budget: int | None = None) -> SpectrumShells:
    """All jumps t_k <= t_max of N(t) with their exact multiplicities."""
    if isinstance(t_max, bool) or not math.isfinite(float(t_max)):
        raise ValueError(f"t_max must be finite, got {t_max!r}")
    t_max = float(t_max)
    if t_max <= 0:
        raise ValueError(f"t_max must be > 0, got {t_max!r}")
    return quad_shells(form.counting_form, FOUR_PI_SQ, t_max, budget)
