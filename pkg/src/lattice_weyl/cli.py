"""Command-line interface: tables of counts, averages, figure data and the
Klein bottle / projective plane identities, written as CSV or JSON.

Exit codes: 0 success, 2 usage error, 3 enumeration budget exceeded or
series tolerance unreachable.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from . import averaging, lattice, series, surfaces
from .lattice import BudgetExceeded, EllipseForm
from .series import SeriesControl, ToleranceUnreachable

log = logging.getLogger("lattice_weyl")

FIGURE_ELLIPSE = EllipseForm(2.0, 0.5, 0.0)

COLUMNS = {
    "count": ["t", "N", "D"],
    "average": ["R", "A_exact", "A_series", "A_asym1", "A_asym2", "A_tilde", "rescaling_gap"],
    "surfaces": ["t", "N_T12", "N_KB", "kb_residual", "N_T22", "N_PP", "pp_residual"],
}

FIGURE_QUANTITIES = {
    1: "D",
    2: "t^-1/4 D",
    3: "A",
    4: "t^1/4 A",
    5: "g(sqrt t)",
    6: "t^1/4 A - g(sqrt t)",
    7: "sqrt t (t^1/4 A - g(sqrt t))",
    8: "A_tilde",
    9: "A(2 pi t^2) / (2 sqrt(2 pi))",
    10: "A(2 pi t^2) / (2 sqrt(2 pi)) - A_tilde",
    11: "g(sqrt t) [a1=2, a2=1/2]",
    12: "t^1/4 A - g(sqrt t) [a1=2, a2=1/2]",
}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    form: EllipseForm = field(default_factory=EllipseForm.unit_disk)
    tol: float = 1e-6
    t_min: float = 1.0
    t_max: float = 1000.0
    steps: int = 100
    output: str | None = None
    format: str = "csv"
    figure: int | None = None

    def __post_init__(self):
        if not (math.isfinite(self.t_min) and math.isfinite(self.t_max)):
            raise UsageError("grid bounds must be finite")
        if self.t_min < 0:
            raise UsageError("t_min must be >= 0")
        if self.steps < 1:
            raise UsageError("steps must be >= 1")
        if self.t_max < self.t_min:
            raise UsageError(f"empty grid: t_max={self.t_max} < t_min={self.t_min}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.format!r}")
        if not self.tol > 0:
            raise UsageError("tol must be > 0")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        data = dict(data)
        if "form" in data:
            data["form"] = EllipseForm.from_dict(data["form"])
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    def grid(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.t_min])
        return np.linspace(self.t_min, self.t_max, self.steps)

    @property
    def control(self) -> SeriesControl:
        return SeriesControl(abs_tol=self.tol)


def _positive_grid(cfg, what):
    ts = cfg.grid()
    if ts.min() <= 0:
        raise UsageError(f"{what} needs t_min > 0")
    return ts


def cmd_count(cfg: RunConfig):
    rows = []
    for t in cfg.grid():
        n = lattice.count(cfg.form, t)
        rows.append([float(t), n, n - cfg.form.area_factor * t / (4.0 * math.pi)])
    return COLUMNS["count"], rows


def cmd_average(cfg: RunConfig):
    rows = []
    ctl = cfg.control
    for R in _positive_grid(cfg, "average"):
        rep = series.average_report(cfg.form, R, ctl)
        rows.append([
            float(R), rep.a_exact, rep.a_series, rep.a_asymptotic_1, rep.a_asymptotic_2,
            averaging.average_radius(cfg.form, R),
            averaging.radius_rescaling_gap(cfg.form, R),
        ])
    return COLUMNS["average"], rows


def _scaled_residual(form, ts, ctl):
    shells = lattice.spectrum_shells(form, float(ts.max()))
    A = averaging.average_exact_many(form, ts, shells)
    g = series.g1_many(form, np.sqrt(ts), ctl)
    return ts**0.25 * A - g


def figure_values(fig: int, cfg: RunConfig) -> np.ndarray:
    """The plotted quantity of figure ``fig`` on the configured grid."""
    form, ctl = cfg.form, cfg.control
    if fig == 1:
        ts = cfg.grid()
        return np.array([lattice.remainder(form, t) for t in ts])
    ts = _positive_grid(cfg, f"figure {fig}")
    if fig == 2:
        return ts**-0.25 * np.array([lattice.remainder(form, t) for t in ts])
    if fig in (3, 4):
        A = averaging.average_exact_many(form, ts)
        return A if fig == 3 else ts**0.25 * A
    if fig == 5:
        return series.g1_many(form, np.sqrt(ts), ctl)
    if fig == 6:
        return _scaled_residual(form, ts, ctl)
    if fig == 7:
        return np.sqrt(ts) * _scaled_residual(form, ts, ctl)
    if fig in (8, 9, 10):
        top = max(lattice.FOUR_PI_SQ * t * t for t in ts)
        shells = lattice.spectrum_shells(form, top)
        tilde = np.array([averaging.average_radius(form, t, shells) for t in ts])
        if fig == 8:
            return tilde
        rescaled = averaging.INV_2_SQRT_2PI * averaging.average_exact_many(
            form, 2.0 * math.pi * ts**2, shells)
        return rescaled if fig == 9 else rescaled - tilde
    if fig == 11:
        return series.g1_many(FIGURE_ELLIPSE, np.sqrt(ts), ctl)
    if fig == 12:
        return _scaled_residual(FIGURE_ELLIPSE, ts, ctl)
    raise UsageError(f"unknown figure id {fig!r}; expected 1..12")


def cmd_figures(cfg: RunConfig):
    if cfg.figure is None:
        raise UsageError("figures needs --figure N")
    if cfg.figure not in FIGURE_QUANTITIES:
        raise UsageError(f"unknown figure id {cfg.figure!r}; expected 1..12")
    values = figure_values(cfg.figure, cfg)
    return ["t", FIGURE_QUANTITIES[cfg.figure]], [[float(t), float(v)] for t, v in zip(cfg.grid(), values)]


def cmd_surfaces(cfg: RunConfig):
    rows = []
    entries = surfaces.identity_residuals(cfg.grid())
    for kb, pp in zip(entries[::2], entries[1::2]):
        rows.append([kb.t, kb.n_torus, kb.n_surface, kb.identity_residual,
                     pp.n_torus, pp.n_surface, pp.identity_residual])
    return COLUMNS["surfaces"], rows


COMMANDS = {
    "count": cmd_count,
    "average": cmd_average,
    "figures": cmd_figures,
    "surfaces": cmd_surfaces,
}


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def render(columns, rows, fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(_quote(c) for c in columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    records = [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows]
    return json.dumps(records, indent=1) + "\n"


def _quote(name: str) -> str:
    return f'"{name}"' if ("," in name or " " in name) else name


def _json_value(v):
    if v is None:
        return None
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return int(v)
    return float(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("--a1", type=float)
    common.add_argument("--a2", type=float)
    common.add_argument("--theta", type=float)
    common.add_argument("--tol", type=float)
    common.add_argument("--tmin", type=float, dest="t_min")
    common.add_argument("--tmax", type=float, dest="t_max")
    common.add_argument("--steps", type=int)
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out", dest="output", help="output file (default: stdout)")
    common.add_argument("--figure", type=int, help="figure id 1..12 (figures command)")
    common.add_argument("-v", "--verbose", action="store_true")
    parser = argparse.ArgumentParser(
        prog="lattice-weyl",
        description="Lattice points in disks and ellipses: Weyl remainder, averages, "
                    "Bessel-series and asymptotic checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "count": "N(t) and D(t) on a grid",
        "average": "A(R) by every path, the radius average and the rescaling gap",
        "figures": "data behind figure N",
        "surfaces": "Klein bottle and projective plane counting identities",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text)
    return parser


def config_from_args(args) -> RunConfig:
    base = {}
    if args.config:
        with open(args.config) as fh:
            base = json.load(fh)
    cfg = RunConfig.from_dict(base)
    form = cfg.form.to_dict()
    for key in ("a1", "a2", "theta"):
        if getattr(args, key) is not None:
            form[key] = getattr(args, key)
    overrides = {k: getattr(args, k) for k in ("tol", "t_min", "t_max", "steps", "format", "output", "figure")
                 if getattr(args, k) is not None}
    return replace(cfg, form=EllipseForm.from_dict(form), **overrides)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(args)
        columns, rows = COMMANDS[args.command](cfg)
    except (BudgetExceeded, ToleranceUnreachable, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError, TypeError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    text = render(columns, rows, cfg.format)
    if cfg.output:
        with open(cfg.output, "w", newline="") as fh:
            fh.write(text)
        log.info("wrote %d rows to %s", len(rows), cfg.output)
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
