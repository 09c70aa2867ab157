"""Lattice points in disks and ellipses: the Weyl remainder, its running
averages, their Bessel series and almost-periodic asymptotics, and the
Klein bottle / projective plane counting identities."""

from .averaging import AverageReport, average_exact, average_exact_many, average_radius, radius_rescaling_gap
from .bessel import BesselRegimeConfig, bessel_j, j2_asymptotic_leading, jalpha_asymptotic_leading
from .lattice import BudgetExceeded, EllipseForm, SpectrumShells, brute_force_count, count, remainder, spectrum_shells
from .series import (
    SeriesControl,
    ToleranceUnreachable,
    asymptotic_average,
    average_bessel,
    average_report,
    g1,
    g1_many,
    g2,
    g2_many,
)
from .surfaces import SurfaceCount, count_klein_bottle, count_projective_plane, count_torus_rect, identity_residuals

__all__ = [
    "AverageReport", "average_exact", "average_exact_many", "average_radius", "radius_rescaling_gap",
    "BesselRegimeConfig", "bessel_j", "j2_asymptotic_leading", "jalpha_asymptotic_leading",
    "BudgetExceeded", "EllipseForm", "SpectrumShells", "brute_force_count", "count", "remainder",
    "spectrum_shells", "SeriesControl", "ToleranceUnreachable", "asymptotic_average", "average_bessel",
    "average_report", "g1", "g1_many", "g2", "g2_many", "SurfaceCount", "count_klein_bottle",
    "count_projective_plane", "count_torus_rect", "identity_residuals",
]
