"""Closed-form energy ledgers for the six refrigeration cycles.

Six cycle kinds are supported:

* ``otto`` -- four-stroke Otto refrigerator (ramp up, hot contact, ramp
  down, cold contact);
* ``mo1``  -- Otto cycle with a measurement stroke inserted *before* the
  cold thermalization (five strokes); extra heat is drawn from the cold
  reservoir, so the COP grows linearly with the measurement strength;
* ``mo2``  -- Otto cycle with the measurement stroke *after* the cold
  thermalization (five strokes); the measurement induces an internal
  engine whose output can replace the externally invested work;
* ``swap`` -- two-stroke two-qubit swap refrigerator;
* ``ms1`` / ``ms2`` -- swap cycles with the measurement stroke after /
  before the swap; stroke by stroke their energy exchanges coincide with
  the mo1 / mo2 values.

Every ledger closes (entries sum to zero) and, in the strict refrigeration
regime beta_c*omega_c < beta_h*omega_h, satisfies the sign contract
W1 < 0, W2 > 0, Q_h < 0, Q_c > 0, Q_meas <= 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import NamedTuple

from .errors import InvalidParameterError, RegimeError

FIRST_LAW_ATOL = 1e-12

WORK = "work"
HEAT = "heat"
QUANTUM_HEAT = "quantum-heat"

AGENT = "external-agent"
HOT_RESERVOIR = "hot-reservoir"
COLD_RESERVOIR = "cold-reservoir"
APPARATUS = "measurement-apparatus"


class CycleKind(str, enum.Enum):
    OTTO = "otto"
    MO1 = "mo1"
    MO2 = "mo2"
    SWAP = "swap"
    MS1 = "ms1"
    MS2 = "ms2"

    def __str__(self) -> str:  # so f-strings print "mo1", not "CycleKind.MO1"
        return self.value


#: Kinds whose measurement stroke precedes the cold thermalization and
#: therefore feeds an internal engine (W_ex, xi_c are meaningful).
ENGINE_KINDS = (CycleKind.MO2, CycleKind.MS2)
SWAP_KINDS = (CycleKind.SWAP, CycleKind.MS1, CycleKind.MS2)
MEASURED_KINDS = (CycleKind.MO1, CycleKind.MO2, CycleKind.MS1, CycleKind.MS2)


@dataclass(frozen=True)
class CycleParams:
    """The five scalars defining a cycle instance.

    ``omega_c``/``omega_h`` are the cold/hot transition frequencies,
    ``beta_c``/``beta_h`` the cold/hot inverse temperatures, ``xi`` the
    measurement strength.  Construction checks only finiteness, positivity
    and the xi range; the ordering inequalities are enforced by the cycle
    operations so that out-of-regime parameter sets can still be classified.
    """

    omega_c: float
    omega_h: float
    beta_c: float
    beta_h: float
    xi: float = 0.0

    def __post_init__(self):
        for name in ("omega_c", "omega_h", "beta_c", "beta_h"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise InvalidParameterError(f"{name} must be positive and finite, got {value!r}")
            object.__setattr__(self, name, value)
        xi = float(self.xi)
        if not math.isfinite(xi) or xi < 0.0 or xi > 1.0:
            raise InvalidParameterError(f"xi must lie in [0, 1], got {xi!r}")
        object.__setattr__(self, "xi", xi)

    # -- derived scalars used in all the closed forms --------------------

    @property
    def tanh_c(self) -> float:
        """tanh(beta_c * omega_c / 2)."""
        return math.tanh(0.5 * self.beta_c * self.omega_c)

    @property
    def tanh_h(self) -> float:
        """tanh(beta_h * omega_h / 2)."""
        return math.tanh(0.5 * self.beta_h * self.omega_h)

    @property
    def z_c(self) -> float:
        """Cold partition function 2*cosh(beta_c * omega_c / 2)."""
        return 2.0 * math.cosh(0.5 * self.beta_c * self.omega_c)

    @property
    def z_h(self) -> float:
        return 2.0 * math.cosh(0.5 * self.beta_h * self.omega_h)

    @property
    def excited_cold(self) -> float:
        """Excited-state population of the cold thermal state, exp(-beta_c*omega_c/2)/Z_c."""
        return math.exp(-0.5 * self.beta_c * self.omega_c) / self.z_c

    @property
    def excited_hot(self) -> float:
        return math.exp(-0.5 * self.beta_h * self.omega_h) / self.z_h

    def with_xi(self, xi: float) -> "CycleParams":
        return replace(self, xi=xi)


def check_regime(p: CycleParams, strict: bool = False) -> None:
    """Raise :class:`RegimeError` unless ``p`` sits in the refrigeration regime.

    With ``strict=False`` the boundary beta_c*omega_c = beta_h*omega_h (and
    degenerate frequency/temperature equalities) is tolerated; ledgers are
    still well defined there, with the corresponding heats equal to zero.
    COP-style ratios require ``strict=True``.
    """
    bwc, bwh = p.beta_c * p.omega_c, p.beta_h * p.omega_h
    checks = (
        ("omega_c < omega_h", p.omega_c, p.omega_h),
        ("beta_h < beta_c", p.beta_h, p.beta_c),
        ("beta_c*omega_c < beta_h*omega_h", bwc, bwh),
    )
    for inequality, lhs, rhs in checks:
        if lhs > rhs or (strict and lhs == rhs):
            op = ">" if lhs > rhs else "=="
            raise RegimeError(inequality, f"{lhs:.12g} {op} {rhs:.12g}")


# -- per-stroke closed forms ---------------------------------------------


def w1(p: CycleParams) -> float:
    """Work extracted by the first adiabatic ramp (omega_c -> omega_h)."""
    return 0.5 * (p.omega_c - p.omega_h) * p.tanh_c


def w2(p: CycleParams) -> float:
    """Work invested by the second adiabatic ramp (omega_h -> omega_c)."""
    return 0.5 * (p.omega_h - p.omega_c) * p.tanh_h


def q_h(p: CycleParams) -> float:
    """Heat exchanged with the hot reservoir (negative: released into it)."""
    return 0.5 * p.omega_h * (p.tanh_c - p.tanh_h)


def q_c(p: CycleParams) -> float:
    """Heat drawn from the cold reservoir by the unmodified cycle."""
    return 0.5 * p.omega_c * (p.tanh_h - p.tanh_c)


def w_in(p: CycleParams) -> float:
    """Net work an external agent must invest on the unmodified cycle.

    Equals w1 + w2 = -(q_h + q_c); independent of xi, and zero when the
    frequencies degenerate.
    """
    return 0.5 * (p.omega_h - p.omega_c) * (p.tanh_h - p.tanh_c)


def q_meas_hot(p: CycleParams) -> float:
    """Quantum heat released to the apparatus when measuring the hot-thermal
    populations at frequency omega_c (mo1/ms1 measurement stroke)."""
    return -p.xi * p.omega_c * p.excited_hot


def q_meas_cold(p: CycleParams) -> float:
    """Quantum heat released to the apparatus when measuring the cold-thermal
    state in place (mo2/ms2 measurement stroke)."""
    return -p.xi * p.omega_c * p.excited_cold


def q_prime(p: CycleParams) -> float:
    """Measurement-induced extra heat absorbed from the hot reservoir (mo2/ms2)."""
    return p.xi * p.omega_h * p.excited_cold


def w_meas(p: CycleParams) -> float:
    """Work output of the measurement-induced engine (non-positive)."""
    return p.xi * (p.omega_c - p.omega_h) * p.excited_cold


def w_ex(p: CycleParams) -> float:
    """External work left to invest once the engine output is fed back.

    Affine and decreasing in xi; crosses zero at the critical strength
    where the refrigerator becomes autonomous, and is negative beyond it
    (surplus delivered to another work sink).
    """
    return 0.5 * (p.omega_h - p.omega_c) * (p.tanh_h - p.tanh_c - 2.0 * p.xi * p.excited_cold)


def xi_critical(p: CycleParams) -> float:
    """Measurement strength at which the external work requirement vanishes.

    Guaranteed to lie in (0, 1) under the strict refrigeration condition.
    At the degenerate boundary beta_c*omega_c = beta_h*omega_h the critical
    strength collapses to 0, which is returned as-is.
    """
    check_regime(p, strict=False)
    return 0.5 * p.z_c * math.exp(0.5 * p.beta_c * p.omega_c) * (p.tanh_h - p.tanh_c)


# -- ledgers ---------------------------------------------------------------


@dataclass(frozen=True)
class LedgerEntry:
    """One energy flow of a cycle: which stroke, what kind, with whom."""

    stroke: int
    label: str
    kind: str
    counterpart: str
    value: float


@dataclass(frozen=True)
class StrokeLedger:
    """Ordered per-stroke energy exchanges of one closed cycle.

    A thermal-recoupling stroke of a swap cycle contributes one entry per
    reservoir, sharing a stroke index.  The entries of a closed cycle always
    sum to zero; construction enforces this.
    """

    entries: tuple[LedgerEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        total = self.total()
        if abs(total) > FIRST_LAW_ATOL:
            raise InvalidParameterError(f"ledger violates the first law: entries sum to {total:.3e}")

    def total(self) -> float:
        return math.fsum(entry.value for entry in self.entries)

    def value(self, label: str) -> float:
        for entry in self.entries:
            if entry.label == label:
                return entry.value
        raise KeyError(label)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def otto_ledger(p: CycleParams) -> StrokeLedger:
    check_regime(p)
    return StrokeLedger((
        LedgerEntry(1, "ramp_up", WORK, AGENT, w1(p)),
        LedgerEntry(2, "hot_contact", HEAT, HOT_RESERVOIR, q_h(p)),
        LedgerEntry(3, "ramp_down", WORK, AGENT, w2(p)),
        LedgerEntry(4, "cold_contact", HEAT, COLD_RESERVOIR, q_c(p)),
    ))


def mo1_ledger(p: CycleParams) -> StrokeLedger:
    """Otto cycle with the measurement inserted before the cold contact."""
    check_regime(p)
    q_meas = q_meas_hot(p)
    return StrokeLedger((
        LedgerEntry(1, "ramp_up", WORK, AGENT, w1(p)),
        LedgerEntry(2, "hot_contact", HEAT, HOT_RESERVOIR, q_h(p)),
        LedgerEntry(3, "ramp_down", WORK, AGENT, w2(p)),
        LedgerEntry(4, "measurement", QUANTUM_HEAT, APPARATUS, q_meas),
        LedgerEntry(5, "cold_contact", HEAT, COLD_RESERVOIR, q_c(p) - q_meas),
    ))


def mo2_ledger(p: CycleParams) -> StrokeLedger:
    """Otto cycle with the measurement applied right after the cold contact."""
    check_regime(p)
    return StrokeLedger((
        LedgerEntry(1, "measurement", QUANTUM_HEAT, APPARATUS, q_meas_cold(p)),
        LedgerEntry(2, "ramp_up", WORK, AGENT, w1(p) + w_meas(p)),
        LedgerEntry(3, "hot_contact", HEAT, HOT_RESERVOIR, q_h(p) + q_prime(p)),
        LedgerEntry(4, "ramp_down", WORK, AGENT, w2(p)),
        LedgerEntry(5, "cold_contact", HEAT, COLD_RESERVOIR, q_c(p)),
    ))


def swap_ledger(p: CycleParams) -> StrokeLedger:
    check_regime(p)
    return StrokeLedger((
        LedgerEntry(1, "swap", WORK, AGENT, w_in(p)),
        LedgerEntry(2, "hot_contact", HEAT, HOT_RESERVOIR, q_h(p)),
        LedgerEntry(2, "cold_contact", HEAT, COLD_RESERVOIR, q_c(p)),
    ))


def ms1_ledger(p: CycleParams) -> StrokeLedger:
    """Swap cycle measured after the swap; energetics coincide with mo1."""
    check_regime(p)
    q_meas = q_meas_hot(p)
    return StrokeLedger((
        LedgerEntry(1, "swap", WORK, AGENT, w_in(p)),
        LedgerEntry(2, "measurement", QUANTUM_HEAT, APPARATUS, q_meas),
        LedgerEntry(3, "hot_contact", HEAT, HOT_RESERVOIR, q_h(p)),
        LedgerEntry(3, "cold_contact", HEAT, COLD_RESERVOIR, q_c(p) - q_meas),
    ))


def ms2_ledger(p: CycleParams) -> StrokeLedger:
    """Swap cycle measured before the swap; energetics coincide with mo2."""
    check_regime(p)
    return StrokeLedger((
        LedgerEntry(1, "measurement", QUANTUM_HEAT, APPARATUS, q_meas_cold(p)),
        LedgerEntry(2, "swap", WORK, AGENT, w_ex(p)),
        LedgerEntry(3, "hot_contact", HEAT, HOT_RESERVOIR, q_h(p) + q_prime(p)),
        LedgerEntry(3, "cold_contact", HEAT, COLD_RESERVOIR, q_c(p)),
    ))


_LEDGERS = {
    CycleKind.OTTO: otto_ledger,
    CycleKind.MO1: mo1_ledger,
    CycleKind.MO2: mo2_ledger,
    CycleKind.SWAP: swap_ledger,
    CycleKind.MS1: ms1_ledger,
    CycleKind.MS2: ms2_ledger,
}


def ledger(kind: CycleKind | str, p: CycleParams) -> StrokeLedger:
    return _LEDGERS[CycleKind(kind)](p)


# -- performance figures ----------------------------------------------------


def otto_cop(p: CycleParams) -> float:
    """COP of the unmodified Otto (and swap) refrigerator, omega_c/(omega_h - omega_c)."""
    check_regime(p, strict=True)
    return p.omega_c / (p.omega_h - p.omega_c)


def mo1_cop(p: CycleParams) -> float:
    """COP of the measured-before-cold-contact cycle; grows linearly with xi."""
    check_regime(p, strict=True)
    boost = 2.0 * p.xi * p.excited_hot / (p.tanh_h - p.tanh_c)
    return (1.0 + boost) / (p.omega_h / p.omega_c - 1.0)


def mo2_cop(p: CycleParams) -> float:
    """COP of the measured-after-cold-contact cycle; independent of xi."""
    return otto_cop(p)


ms1_cop = mo1_cop
ms2_cop = mo2_cop


class WorkSplit(NamedTuple):
    """How the invested work of an engine-bearing cycle is sourced.

    ``w_in = w_ex - w_meas``: the xi-independent total splits into the
    external contribution ``w_ex`` and the (non-positive) engine output
    ``w_meas``.  ``surplus`` flags xi beyond the critical strength, where
    w_ex < 0 and the engine over-delivers.
    """

    w_ex: float
    w_meas: float
    w_in: float
    surplus: bool


def mo2_work_split(p: CycleParams) -> WorkSplit:
    check_regime(p)
    external = w_ex(p)
    return WorkSplit(external, w_meas(p), external - w_meas(p), external < 0.0)


ms2_work_split = mo2_work_split


class EngineEfficiency(NamedTuple):
    """Efficiency of the measurement-induced engine, two ways.

    ``closed_form`` is 1 - omega_c/omega_h; ``ledger_ratio`` is
    -w_meas/q_prime evaluated from the xi-bearing flows (identical up to
    roundoff for every xi > 0).
    """

    closed_form: float
    ledger_ratio: float


def mo2_engine_efficiency(p: CycleParams) -> EngineEfficiency:
    check_regime(p)
    if p.xi == 0.0:
        raise RegimeError("xi > 0", "the measurement-induced engine is undefined at xi = 0")
    return EngineEfficiency(1.0 - p.omega_c / p.omega_h, -w_meas(p) / q_prime(p))


ms2_engine_efficiency = mo2_engine_efficiency


@dataclass(frozen=True)
class CycleReport:
    """All derived scalars of one cycle instance plus its ledger."""

    kind: CycleKind
    params: CycleParams
    ledger: StrokeLedger
    w_in: float
    w_ex: float
    w_meas: float
    q_c_total: float
    q_h_total: float
    cop: float
    xi_critical: float | None = None
    engine_efficiency: float | None = None

    def scalars(self) -> dict[str, float | None]:
        return {
            "w_in": self.w_in,
            "w_ex": self.w_ex,
            "w_meas": self.w_meas,
            "q_c_total": self.q_c_total,
            "q_h_total": self.q_h_total,
            "cop": self.cop,
            "xi_critical": self.xi_critical,
            "engine_efficiency": self.engine_efficiency,
        }


def report(kind: CycleKind | str, p: CycleParams) -> CycleReport:
    """Assemble ledger, work split, total heats and COP for one cycle.

    Requires the strict refrigeration regime (the COP is undefined on the
    boundary).
    """
    kind = CycleKind(kind)
    check_regime(p, strict=True)
    led = ledger(kind, p)
    invested = w_in(p)
    if kind in ENGINE_KINDS:
        split = mo2_work_split(p)
        return CycleReport(
            kind, p, led,
            w_in=split.w_in, w_ex=split.w_ex, w_meas=split.w_meas,
            q_c_total=q_c(p), q_h_total=q_h(p) + q_prime(p),
            cop=mo2_cop(p),
            xi_critical=xi_critical(p),
            engine_efficiency=(1.0 - p.omega_c / p.omega_h) if p.xi > 0.0 else None,
        )
    if kind in (CycleKind.MO1, CycleKind.MS1):
        q_meas = q_meas_hot(p)
        return CycleReport(
            kind, p, led,
            w_in=invested, w_ex=invested, w_meas=0.0,
            q_c_total=q_c(p) - q_meas, q_h_total=q_h(p),
            cop=mo1_cop(p),
        )
    return CycleReport(
        kind, p, led,
        w_in=invested, w_ex=invested, w_meas=0.0,
        q_c_total=q_c(p), q_h_total=q_h(p),
        cop=otto_cop(p),
    )
