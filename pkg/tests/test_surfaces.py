import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lattice_weyl.lattice import FOUR_PI_SQ, EllipseForm, count
from lattice_weyl.surfaces import (
    count_klein_bottle,
    count_projective_plane,
    count_torus_rect,
    identity_residuals,
)


def brute_torus(p, q, t):
    lim = int(math.sqrt(t / FOUR_PI_SQ) / min(p, q)) + 2
    j, k = np.meshgrid(np.arange(-lim, lim + 1), np.arange(-lim, lim + 1))
    return int(np.count_nonzero(FOUR_PI_SQ * ((p * j) ** 2 + (q * k) ** 2) <= t))


def brute_klein_bottle(t):
    # e^{2 pi i k y / 2} with k even, and one function per (j > 0, k in Z)
    lim = int(math.sqrt(t / FOUR_PI_SQ) * 2) + 2
    total = sum(1 for k in range(-lim, lim + 1) if k % 2 == 0 and FOUR_PI_SQ * (k / 2) ** 2 <= t)
    total += sum(1 for j in range(1, lim) for k in range(-lim, lim + 1)
                 if FOUR_PI_SQ * (j * j + k * k / 4) <= t)
    return total


def brute_projective_plane(t):
    lim = int(math.sqrt(t / FOUR_PI_SQ) * 2) + 2
    lam = lambda j, k: FOUR_PI_SQ * ((j / 2) ** 2 + (k / 2) ** 2)
    total = 1
    total += sum(2 for k in range(2, lim, 2) if lam(0, k) <= t)
    total += sum(1 for j in range(1, lim) for k in range(1, lim) if lam(j, k) <= t)
    return total


def test_torus_examples():
    assert count_torus_rect(1, Fraction(1, 2), 39.5) == 7
    assert count_torus_rect(0.5, 0.5, 10.0) == 5


def test_surface_examples():
    assert count_klein_bottle(0.0) == 1
    assert count_klein_bottle(39.5) == 4
    assert count_projective_plane(10.0) == 1
    assert count_projective_plane(0.0) == 1


def test_residual_examples():
    kb, pp = identity_residuals([39.5])
    assert kb.surface == "KB" and kb.identity_residual == 0.5
    kb, pp = identity_residuals([10.0])
    assert pp.surface == "PP" and pp.identity_residual == -0.5
    assert pp.n_torus_scaled == pp.n_torus and pp.within_window


@pytest.mark.parametrize("t", [0.0, 20.0, 39.5, 100.0, 1000.0, 4321.0])
def test_against_brute_force(t):
    assert count_torus_rect(1, 0.5, t) == brute_torus(1, 0.5, t)
    assert count_torus_rect(0.5, 0.5, t) == brute_torus(0.5, 0.5, t)
    assert count_klein_bottle(t) == brute_klein_bottle(t)
    assert count_projective_plane(t) == brute_projective_plane(t)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 1e6))
def test_square_torus_matches_disk_count(t):
    assert count_torus_rect(1, 1, t) == count(EllipseForm.unit_disk(), t)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 1e6))
def test_identity_windows(t):
    for entry in identity_residuals([t]):
        assert entry.within_window


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        count_klein_bottle(-1.0)
    with pytest.raises(ValueError):
        count_projective_plane(math.nan)
    with pytest.raises(ValueError):
        count_torus_rect(0, 1, 1.0)
