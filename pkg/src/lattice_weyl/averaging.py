"""Running averages of the remainder D, integrated exactly from the shells.

N is a step function, so int_0^R N(t) dt = sum_{t_k <= R} m_k (R - t_k) with
no discretisation error.  With exact shell keys the weighted prefix sums
are carried in integers; otherwise ``math.fsum`` is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lattice import FOUR_PI_SQ, EllipseForm, SpectrumShells, spectrum_shells

INV_2_SQRT_2PI = 1.0 / (2.0 * math.sqrt(2.0 * math.pi))


@dataclass
class AverageReport:
    """A(R) by the exact, Bessel-series and asymptotic paths.

    ``a_asymptotic_2`` is None for forms other than the unit disk, where the
    second-order term is not available.
    """

    R: float
    a_exact: float
    a_series: float
    a_asymptotic_1: float
    a_asymptotic_2: float | None = None
    diffs: dict = field(default_factory=dict)

    def __post_init__(self):
        values = {
            "exact": self.a_exact,
            "series": self.a_series,
            "asymptotic_1": self.a_asymptotic_1,
        }
        if self.a_asymptotic_2 is not None:
            values["asymptotic_2"] = self.a_asymptotic_2
        for name, v in values.items():
            if not math.isfinite(v):
                raise ValueError(f"non-finite {name} value {v!r}")
        names = list(values)
        self.diffs = {
            f"{a}-{b}": abs(values[a] - values[b])
            for k, a in enumerate(names) for b in names[k + 1:]
        }


def _check_R(R):
    if isinstance(R, bool):
        raise TypeError("R must be a real number")
    R = float(R)
    if not (math.isfinite(R) and R > 0):
        raise ValueError(f"R must be finite and > 0, got {R!r}")
    return R


def _shells_for(form, t_max, shells):
    if shells is None:
        return spectrum_shells(form, t_max)
    if shells.t_max < t_max:
        raise ValueError(f"shells enumerated to {shells.t_max}, need {t_max}")
    return shells


def integral_of_count(shells: SpectrumShells, R: float) -> float:
    """int_0^R N(t) dt from the jump data."""
    idx = int(np.searchsorted(shells.t, R, side="right"))
    m = shells.m[:idx]
    if shells.keys is not None:
        n = int(m.sum())
        weighted = int(np.dot(m, shells.keys[:idx]))
        return math.fsum([R * n, -(shells.scale / shells.den) * weighted])
    return math.fsum((m * (R - shells.t[:idx])).tolist())


def average_exact(form: EllipseForm, R: float, shells: SpectrumShells | None = None) -> float:
    """A(R) = (1/R) int_0^R D(t) dt, exact up to rounding."""
    R = _check_R(R)
    shells = _shells_for(form, R, shells)
    area = form.area_factor * R * R / (8.0 * math.pi)
    return (integral_of_count(shells, R) - area) / R


def average_exact_many(form: EllipseForm, Rs, shells: SpectrumShells | None = None) -> np.ndarray:
    """A(R) on a grid, sharing one shell enumeration."""
    Rs = np.asarray([_check_R(R) for R in np.atleast_1d(Rs)], dtype=float)
    shells = _shells_for(form, float(Rs.max()), shells)
    return np.array([average_exact(form, R, shells) for R in Rs])


def average_radius(form: EllipseForm, R: float, shells: SpectrumShells | None = None) -> float:
    """The radius-variable average (1/R) int_0^R D((2 pi r)^2) dr.

    N((2 pi r)^2) jumps by m_k at r_k = sqrt(t_k) / (2 pi), and the Weyl
    term integrates to a1 a2 pi R^3 / 3.
    """
    R = _check_R(R)
    shells = _shells_for(form, FOUR_PI_SQ * R * R, shells)
    if shells.keys is not None:
        r = np.sqrt(shells.keys / shells.den * (shells.scale / FOUR_PI_SQ))
    else:
        r = np.sqrt(shells.t) / (2.0 * math.pi)
    idx = int(np.searchsorted(r, R, side="right"))
    parts = (shells.m[:idx] * (R - r[:idx])).tolist()
    parts.append(-form.area_factor * math.pi * R**3 / 3.0)
    return math.fsum(parts) / R


def radius_rescaling_gap(form: EllipseForm, R: float) -> float:
    """average_radius(R) - A(2 pi R^2) / (2 sqrt(2 pi))."""
    R = _check_R(R)
    t_top = max(2.0 * math.pi * R * R, FOUR_PI_SQ * R * R)
    shells = spectrum_shells(form, t_top)
    return average_radius(form, R, shells) - INV_2_SQRT_2PI * average_exact(
        form, 2.0 * math.pi * R * R, shells
    )
