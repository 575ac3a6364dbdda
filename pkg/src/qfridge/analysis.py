"""Parameter sweeps, numeric root finding and the published figure datasets.

The figure presets fix omega_h = 10, omega_c = 2, beta_c = 0.4 and trace the
measurement strength over [0, 1] for four hot-bath temperatures
(beta_h in {0.25, 0.19, 0.16, 0.14}).
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

import numpy as np

from .analytic import (
    CycleKind,
    CycleParams,
    ENGINE_KINDS,
    mo1_cop,
    mo2_cop,
    otto_cop,
    q_c,
    q_meas_hot,
    w_ex,
    w_in,
    xi_critical,
)
from .errors import InvalidParameterError, QFridgeError, RegimeError

REFRIGERATOR = "refrigerator"
BOUNDARY = "boundary"
NON_REFRIGERATOR = "non-refrigerator"

_PARAM_NAMES = tuple(f.name for f in fields(CycleParams))

#: Fixed parameters shared by both published figures.
FIGURE_BASE = CycleParams(omega_c=2.0, omega_h=10.0, beta_c=0.4, beta_h=0.25)
#: Hot-bath inverse temperatures of the four figure series.
FIGURE_BETA_H = (0.25, 0.19, 0.16, 0.14)
#: Invested work per series as printed in the figure captions (two decimals).
FIGURE_CAPTION_W_IN = (1.87, 1.43, 1.13, 0.89)
#: Line styles identifying the series in the figures.
FIGURE_STYLES = ("dotted-dashed-black", "dashed-blue", "dotted-red", "solid-green")


@dataclass(frozen=True)
class RegimeClassification:
    """Outcome of checking the refrigeration inequalities on a parameter set."""

    category: str
    satisfied: tuple[str, ...]
    boundary: tuple[str, ...]
    violated: tuple[str, ...]


def regime_validate(p: CycleParams) -> RegimeClassification:
    """Classify a parameter set as refrigerator, boundary, or non-refrigerator.

    Each inequality is reported with the values that decided it.
    """
    checks = (
        ("omega_c < omega_h", p.omega_c, p.omega_h),
        ("beta_h < beta_c", p.beta_h, p.beta_c),
        ("beta_c*omega_c < beta_h*omega_h", p.beta_c * p.omega_c, p.beta_h * p.omega_h),
    )
    satisfied, boundary, violated = [], [], []
    for inequality, lhs, rhs in checks:
        detail = f"{inequality} [{lhs:.12g} vs {rhs:.12g}]"
        if lhs < rhs:
            satisfied.append(detail)
        elif lhs == rhs:
            boundary.append(detail)
        else:
            violated.append(detail)
    if violated:
        category = NON_REFRIGERATOR
    elif boundary:
        category = BOUNDARY
    else:
        category = REFRIGERATOR
    return RegimeClassification(category, tuple(satisfied), tuple(boundary), tuple(violated))


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for a one-parameter sweep of a cycle."""

    kind: CycleKind
    parameter: str
    start: float
    stop: float
    steps: int
    base: CycleParams

    def __post_init__(self):
        object.__setattr__(self, "kind", CycleKind(self.kind))
        if self.parameter not in _PARAM_NAMES:
            raise InvalidParameterError(
                f"unknown sweep parameter {self.parameter!r}; choose from {_PARAM_NAMES}"
            )
        if not self.start < self.stop:
            raise InvalidParameterError(f"sweep range must satisfy start < stop, got [{self.start}, {self.stop}]")
        if int(self.steps) != self.steps or self.steps < 2:
            raise InvalidParameterError(f"steps must be an integer >= 2, got {self.steps!r}")
        object.__setattr__(self, "steps", int(self.steps))

    def grid(self) -> np.ndarray:
        """Evaluation points, inclusive of both endpoints."""
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepRow:
    """Scalars of one grid point; metric fields are None where the regime is invalid."""

    value: float
    cop: float | None
    qc_total: float | None
    w_in: float | None
    w_ex: float | None
    regime: str


def _row_scalars(kind: CycleKind, p: CycleParams) -> tuple[float, float, float, float]:
    invested = w_in(p)
    if kind in ENGINE_KINDS:
        return mo2_cop(p), q_c(p), invested, w_ex(p)
    if kind in (CycleKind.MO1, CycleKind.MS1):
        return mo1_cop(p), q_c(p) - q_meas_hot(p), invested, invested
    return otto_cop(p), q_c(p), invested, invested


def sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate the closed forms along the grid.

    Grid points outside the strict refrigeration regime are kept in the
    output, marked ``boundary`` or ``skipped: <inequality>`` with the metric
    columns empty.  A sweep where no point is valid raises.
    """
    rows: list[SweepRow] = []
    valid = 0
    for value in spec.grid():
        try:
            p = replace(spec.base, **{spec.parameter: float(value)})
        except InvalidParameterError as exc:
            rows.append(SweepRow(float(value), None, None, None, None, f"skipped: {exc}"))
            continue
        classification = regime_validate(p)
        if classification.category == REFRIGERATOR:
            cop, qc_total, invested, external = _row_scalars(spec.kind, p)
            rows.append(SweepRow(float(value), cop, qc_total, invested, external, REFRIGERATOR))
            valid += 1
        elif classification.category == BOUNDARY:
            rows.append(SweepRow(float(value), None, None, None, None, BOUNDARY))
        else:
            rows.append(SweepRow(
                float(value), None, None, None, None,
                "skipped: " + "; ".join(classification.violated),
            ))
    if valid == 0:
        raise InvalidParameterError("sweep produced no grid point in the refrigeration regime")
    if spec.parameter == "xi":
        _check_xi_monotonicity(spec.kind, rows)
    return rows


def _check_xi_monotonicity(kind: CycleKind, rows: list[SweepRow]) -> None:
    # Guaranteed by the closed forms; a violation means an internal bug.
    slack = 1e-12
    if kind in (CycleKind.MO1, CycleKind.MS1):
        cops = [r.cop for r in rows if r.cop is not None]
        if any(b - a < -slack for a, b in zip(cops, cops[1:])):
            raise QFridgeError("internal consistency failure: COP not non-decreasing in xi")
    if kind in ENGINE_KINDS:
        exts = [r.w_ex for r in rows if r.w_ex is not None]
        if any(b - a > slack for a, b in zip(exts, exts[1:])):
            raise QFridgeError("internal consistency failure: w_ex not non-increasing in xi")


def find_xi_critical_numeric(
    p: CycleParams,
    f_tol: float = 1e-12,
    x_tol: float = 1e-10,
) -> float:
    """Locate the zero of the external work over xi in [0, 1] by bisection.

    Pure bisection is enough (the external work is affine in xi) and keeps
    the search derivative-free and deterministic.  Agrees with the closed
    form to better than ``x_tol``.
    """
    lo, hi = 0.0, 1.0
    f_lo = w_ex(p.with_xi(lo))
    f_hi = w_ex(p.with_xi(hi))
    if f_lo < 0.0 or f_hi > 0.0:
        # cannot happen under the strict refrigeration condition
        check_strict = regime_validate(p)
        raise RegimeError(
            "beta_c*omega_c < beta_h*omega_h",
            f"external work does not change sign on [0, 1]; regime={check_strict.category}",
        )
    while hi - lo > x_tol:
        mid = 0.5 * (lo + hi)
        f_mid = w_ex(p.with_xi(mid))
        if abs(f_mid) <= f_tol:
            return mid
        if f_mid > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class FigureSeries:
    """One sweep of the figure dataset: a beta_h value and its rows over xi."""

    beta_h: float
    style: str
    w_in_caption: float
    w_in: float
    rows: tuple[SweepRow, ...]


def _figure_dataset(steps: int) -> list[FigureSeries]:
    series = []
    for beta_h, caption, style in zip(FIGURE_BETA_H, FIGURE_CAPTION_W_IN, FIGURE_STYLES):
        base = replace(FIGURE_BASE, beta_h=beta_h)
        spec = SweepSpec(CycleKind.MO1, "xi", 0.0, 1.0, steps, base)
        series.append(FigureSeries(beta_h, style, caption, w_in(base), tuple(sweep(spec))))
    return series


def fig2_dataset(steps: int = 101) -> list[FigureSeries]:
    """COP versus measurement strength for the four published hot-bath temperatures."""
    return _figure_dataset(steps)


def fig3_dataset(steps: int = 101) -> list[FigureSeries]:
    """Cold-reservoir heat versus measurement strength for the same four series.

    All four series meet at xi = 1, where the removed heat saturates at
    (omega_c/2) * (1 - tanh(beta_c*omega_c/2)) regardless of beta_h.
    """
    return _figure_dataset(steps)


def random_params(count: int, seed: int) -> list[CycleParams]:
    """Deterministic sample of parameter sets in the strict refrigeration regime.

    The frequency ratio and inverse-temperature ratio are drawn with margins
    that keep every set safely away from the degenerate boundary, so all
    derived quantities are well conditioned.
    """
    if count < 1:
        raise InvalidParameterError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        omega_c = rng.uniform(0.5, 4.0)
        ratio = rng.uniform(1.3, 5.0)          # omega_h / omega_c
        beta_c = rng.uniform(0.1, 1.0)
        spread = rng.uniform(1.05, 0.95 * ratio)  # beta_c / beta_h < ratio: strict regime
        xi = rng.uniform(0.0, 1.0)
        out.append(CycleParams(
            omega_c=omega_c,
            omega_h=omega_c * ratio,
            beta_c=beta_c,
            beta_h=beta_c / spread,
            xi=xi,
        ))
    return out
