"""Bessel series for A(R), the almost-periodic functions g1, g2 and the
asymptotic approximations built from them.

All three are lattice sums over n != 0 whose terms depend only on the
series form value Q_s(n).  They are summed shell by shell in ascending Q_s,
equal values merged with their multiplicity.

The sums converge only through oscillation: sharp partial sums wander
around the limit with an amplitude decaying like M^-3/2, and an absolute
tail bound needs cutoffs near 10^8.  Instead each sum is taken as a Riesz
mean of order one,

    V(M) = sum_{Q_s <= M^2} (1 - Q_s / M^2) a_n,

whose bias falls off like M^-2, and V(M), V(2M) are combined by Richardson
extrapolation into W(2M) = (4 V(2M) - V(M)) / 3.  M is doubled until two
successive differences |W(2M) - W(M)| and |W(M) - W(M/2)| are both
<= abs_tol; a single difference can be accidentally small near the cusps
of the almost-periodic sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .averaging import AverageReport, average_exact
from .bessel import SQRT_2_OVER_PI, jn_array
from .lattice import EllipseForm, SpectrumShells, quad_shells

G1_PREFACTOR = -math.sqrt(2.0) / math.pi**1.5
G2_PREFACTOR = 15.0 * math.sqrt(2.0) / (8.0 * math.pi**1.5)
_START_NORM = 16.0
_CHUNK_ELEMENTS = 2**23


class ToleranceUnreachable(RuntimeError):
    """The requested tolerance needs a shell cutoff beyond ``max_shell_norm``."""


@dataclass(frozen=True)
class SeriesControl:
    abs_tol: float = 1e-6
    max_shell_norm: float = 1e6

    def __post_init__(self):
        if not (self.abs_tol > 0 and math.isfinite(self.abs_tol)):
            raise ValueError("abs_tol must be positive and finite")
        if not self.max_shell_norm >= _START_NORM:
            raise ValueError(f"max_shell_norm must be >= {_START_NORM}")


@dataclass(frozen=True)
class SeriesResult:
    value: np.ndarray
    cutoff: float
    error_estimate: float


def series_shells(form: EllipseForm, norm: float) -> SpectrumShells:
    """Nonzero shells of Q_s with sqrt(Q_s) <= norm (the origin is dropped)."""
    sh = quad_shells(form.series_form, 1.0, norm * norm)
    return sh


def _shell_values(sh: SpectrumShells):
    if sh.keys is not None:
        q = sh.keys[1:] / sh.den
    else:
        q = sh.t[1:]
    return q, sh.m[1:].astype(float)


def lattice_sum(form: EllipseForm, term, params, ctl: SeriesControl, cutoff: float | None = None) -> SeriesResult:
    """sum_{n != 0} term(Q_s(n), p) for each p in ``params``.

    ``term(q, p)`` receives a column of shell values and a row of
    parameters and returns the per-point term matrix.  With ``cutoff``
    given the extrapolated value at that cutoff is returned without any
    error control (``error_estimate`` is then the last-level difference).
    """
    params = np.atleast_1d(np.asarray(params, dtype=float))
    if cutoff is not None:
        if cutoff < 8:
            raise ValueError("cutoff must be >= 8")
        return _extrapolated(form, term, params, cutoff)
    M = _START_NORM
    while True:
        if 2 * M > ctl.max_shell_norm:
            raise ToleranceUnreachable(
                f"tolerance {ctl.abs_tol:g} not reached with shell cutoff <= {ctl.max_shell_norm:g}"
            )
        res = _extrapolated(form, term, params, 2 * M)
        if res.error_estimate <= ctl.abs_tol:
            return res
        M *= 2


def _riesz_means(col, q, splits, norms):
    """V(M) for each M in ``norms``; ``splits`` are the matching shell counts."""
    out = []
    for n, M in zip(splits, norms):
        c = col[:n]
        out.append(math.fsum(c) - math.fsum(c * q[:n]) / (M * M))
    return out


def _extrapolated(form, term, params, top):
    norms = (top / 8, top / 4, top / 2, top)
    sh = series_shells(form, top)
    q, m = _shell_values(sh)
    splits = [int(np.searchsorted(q, M * M * (1 + 1e-12), side="right")) for M in norms]
    out = np.empty(len(params))
    err = 0.0
    step = _chunk(len(q), len(params))
    for a in range(0, len(params), step):
        p = params[a:a + step]
        t = m[:, None] * term(q[:, None], p[None, :])
        for c in range(t.shape[1]):
            v = _riesz_means(t[:, c], q, splits, norms)
            w0, w1, w2 = ((4.0 * v[k + 1] - v[k]) / 3.0 for k in range(3))
            err = max(err, abs(w2 - w1), abs(w1 - w0))
            out[a + c] = w2
    return SeriesResult(out, top, err)


def _chunk(nq, nparams):
    return max(1, min(nparams, _CHUNK_ELEMENTS // max(nq, 1)))


def _check_positive(name, v):
    if isinstance(v, bool):
        raise TypeError(f"{name} must be a real number")
    v = float(v)
    if not (math.isfinite(v) and v > 0):
        raise ValueError(f"{name} must be finite and > 0, got {v!r}")
    return v


def _bessel_term(af):
    def term(q, R):
        return af / (math.pi * q) * jn_array(2, np.sqrt(q * R))
    return term


def _hankel_leading(x):
    # -sqrt(2/pi) x^-1/2 cos(x - pi/4)
    return -SQRT_2_OVER_PI / np.sqrt(x) * (np.cos(x) + np.sin(x)) * math.sqrt(0.5)


def _bessel_minus_leading_term(af):
    def term(q, R):
        x = np.sqrt(q * R)
        return af / (math.pi * q) * (jn_array(2, x) - _hankel_leading(x))
    return term


def _g1_term(af):
    def term(q, x):
        y = np.sqrt(q) * x
        return G1_PREFACTOR * af * q**-1.25 * (np.cos(y) + np.sin(y)) * math.sqrt(0.5)
    return term


def _g2_term(q, x):
    y = np.sqrt(q) * x
    return G2_PREFACTOR * q**-1.75 * (np.sin(y) - np.cos(y)) * math.sqrt(0.5)


def average_bessel(form: EllipseForm, R: float, ctl: SeriesControl = SeriesControl()) -> float:
    """A(R) as the Bessel series sum_{n!=0} a1 a2 J2(sqrt(Q_s R)) / (pi Q_s)."""
    R = _check_positive("R", R)
    return float(lattice_sum(form, _bessel_term(form.area_factor), R, ctl).value[0])


def g1_many(form: EllipseForm, xs, ctl: SeriesControl = SeriesControl(), method: str = "direct") -> np.ndarray:
    """g1 on an array of x > 0.

    ``method="direct"`` sums the almost-periodic series itself.
    ``method="split"`` uses g1(x) x^-1/2 = A(x^2) - C(x^2), with A from the
    exact lattice count and C = sum (J2 - leading term) / (pi Q_s), whose
    terms decay like Q_s^-7/4.  The split route resolves the cusps of g1
    near x = 2 pi sqrt(eigenvalue) that limit the direct sum's accuracy,
    so it reaches tolerances far below what the direct sum can afford.
    ``abs_tol`` applies to the returned g1 values in both cases.
    """
    xs = np.asarray([_check_positive("x", x) for x in np.atleast_1d(xs)], dtype=float)
    if method == "direct":
        return lattice_sum(form, _g1_term(form.area_factor), xs, ctl).value
    if method == "split":
        out = np.empty(len(xs))
        for k, x in enumerate(xs):
            R = x * x
            c_ctl = SeriesControl(ctl.abs_tol / math.sqrt(x), ctl.max_shell_norm)
            corr = lattice_sum(form, _bessel_minus_leading_term(form.area_factor), R, c_ctl).value[0]
            out[k] = math.sqrt(x) * (average_exact(form, R) - corr)
        return out
    raise ValueError(f"unknown method {method!r}; use 'direct' or 'split'")


def g1(form: EllipseForm, x: float, ctl: SeriesControl = SeriesControl(), method: str = "direct") -> float:
    """The almost-periodic function

        g1(x) = -(sqrt 2 / pi^3/2) a1 a2 sum_{n!=0} Q_s^-5/4 cos(Q_s^1/2 x - pi/4),

    which reduces to the |n|^-5/2 series for the unit disk.
    """
    return float(g1_many(form, [x], ctl, method)[0])


def g2_many(xs, ctl: SeriesControl = SeriesControl()) -> np.ndarray:
    xs = np.asarray([_check_positive("x", x) for x in np.atleast_1d(xs)], dtype=float)
    return lattice_sum(EllipseForm.unit_disk(), _g2_term, xs, ctl).value


def g2(x: float, ctl: SeriesControl = SeriesControl()) -> float:
    """Second-order almost-periodic term for the unit disk,
    (15 sqrt 2 / (8 pi^3/2)) sum_{n!=0} |n|^-7/2 sin(|n| x - pi/4)."""
    return float(g2_many([x], ctl)[0])


def asymptotic_average(form: EllipseForm, R: float, order: int = 1,
                       ctl: SeriesControl = SeriesControl(), method: str = "direct") -> float:
    """g1(sqrt R) R^-1/4, plus g2(sqrt R) R^-3/4 when order == 2 (unit disk only)."""
    R = _check_positive("R", R)
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order!r}")
    if order == 2 and not form.is_unit_disk:
        raise ValueError("the second-order term is only available for the unit disk")
    x = math.sqrt(R)
    value = g1(form, x, ctl, method) * R**-0.25
    if order == 2:
        value += g2(x, ctl) * R**-0.75
    return value


def average_report(form: EllipseForm, R: float, ctl: SeriesControl = SeriesControl()) -> AverageReport:
    R = _check_positive("R", R)
    a1 = asymptotic_average(form, R, 1, ctl)
    a2 = None
    if form.is_unit_disk:
        a2 = a1 + g2(math.sqrt(R), ctl) * R**-0.75
    return AverageReport(
        R=R,
        a_exact=average_exact(form, R),
        a_series=average_bessel(form, R, ctl),
        a_asymptotic_1=a1,
        a_asymptotic_2=a2,
    )
