import math

import numpy as np
import pytest

from lattice_weyl.averaging import (
    INV_2_SQRT_2PI,
    AverageReport,
    average_exact,
    average_exact_many,
    average_radius,
    integral_of_count,
    radius_rescaling_gap,
)
from lattice_weyl.lattice import FOUR_PI_SQ, EllipseForm, spectrum_shells

DISK = EllipseForm.unit_disk()


def midpoint_average(form, R, points):
    """(1/R) int_0^R D(t) dt by the midpoint rule, N read off the shells."""
    sh = spectrum_shells(form, R)
    t = (np.arange(points) + 0.5) * (R / points)
    cum = np.cumsum(sh.m)
    N = cum[np.searchsorted(sh.t, t, side="right") - 1]
    D = N - form.area_factor * t / (4 * math.pi)
    return D.mean()


def test_before_first_eigenvalue():
    for R in (0.5, 10.0, 39.0):
        assert average_exact(DISK, R) == pytest.approx(1 - R / (8 * math.pi), rel=1e-14)


def test_first_shell():
    R = 40.0
    expected = (40.0 + 4 * (40.0 - FOUR_PI_SQ)) / 40.0 - 40.0 / (8 * math.pi)
    assert average_exact(DISK, R) == pytest.approx(expected, rel=1e-14)


def test_against_midpoint_quadrature():
    assert abs(average_exact(DISK, 1000.0) - midpoint_average(DISK, 1000.0, 10**6)) <= 2e-3
    ellipse = EllipseForm(1.3, 0.7, 0.4)
    assert abs(average_exact(ellipse, 3000.0) - midpoint_average(ellipse, 3000.0, 10**6)) <= 2e-3


def test_many_matches_single():
    Rs = [5.0, 100.0, 2500.0, 1e4]
    got = average_exact_many(DISK, Rs)
    assert got.tolist() == [average_exact(DISK, R) for R in Rs]


def test_exact_and_float_shell_integrals_agree():
    # theta = 0 uses integer keys; a tiny rotation forces float grouping
    R = 5e4
    a = integral_of_count(spectrum_shells(DISK, R), R)
    b = integral_of_count(spectrum_shells(EllipseForm(1.0, 1.0 + 1e-15, 1e-9), R), R)
    assert a == pytest.approx(b, rel=1e-12)


def test_radius_average_small():
    for R in (0.1, 0.5, 0.99):
        assert average_radius(DISK, R) == pytest.approx(1 - math.pi * R * R / 3, rel=1e-14)
    assert average_radius(DISK, 1.0) == pytest.approx(1 - math.pi / 3, rel=1e-14)


def test_radius_average_against_midpoint():
    R, points = 20.0, 10**6
    sh = spectrum_shells(DISK, FOUR_PI_SQ * R * R)
    r = (np.arange(points) + 0.5) * (R / points)
    cum = np.cumsum(sh.m)
    N = cum[np.searchsorted(np.sqrt(sh.t) / (2 * math.pi), r, side="right") - 1]
    oracle = (N - math.pi * r * r).mean()
    assert abs(average_radius(DISK, R) - oracle) <= 2e-3


def test_rescaling_gap_composition():
    R = 5.0
    expected = average_radius(DISK, R) - average_exact(DISK, 50 * math.pi) * INV_2_SQRT_2PI
    assert radius_rescaling_gap(DISK, R) == pytest.approx(expected, rel=1e-12, abs=1e-15)


def test_rescaling_gap_decays():
    def rms(lo):
        return math.sqrt(np.mean([radius_rescaling_gap(DISK, R) ** 2 for R in np.linspace(lo, 2 * lo, 40)]))
    levels = [rms(R) for R in (30.0, 60.0, 120.0)]
    assert levels[1] < levels[0] and levels[2] < levels[1]


@pytest.mark.parametrize("R", [0.0, -1.0, math.nan, math.inf])
def test_rejects_bad_R(R):
    with pytest.raises(ValueError):
        average_exact(DISK, R)
    with pytest.raises(ValueError):
        average_radius(DISK, R)


def test_rejects_short_shells():
    with pytest.raises(ValueError):
        average_exact(DISK, 100.0, spectrum_shells(DISK, 50.0))


def test_report_diffs():
    rep = AverageReport(R=1.0, a_exact=1.0, a_series=1.5, a_asymptotic_1=0.0)
    assert rep.diffs == {"exact-series": 0.5, "exact-asymptotic_1": 1.0, "series-asymptotic_1": 1.5}
    rep = AverageReport(R=1.0, a_exact=1.0, a_series=1.0, a_asymptotic_1=1.0, a_asymptotic_2=2.0)
    assert rep.diffs["exact-asymptotic_2"] == 1.0 and len(rep.diffs) == 6
    with pytest.raises(ValueError):
        AverageReport(R=1.0, a_exact=math.nan, a_series=0.0, a_asymptotic_1=0.0)
