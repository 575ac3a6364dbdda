"""Numeric oracle: runs each cycle as a literal stroke sequence on density
operators and books every energy change, independently of the closed forms.

Strokes are modeled at the quasi-static endpoint level:

* an adiabatic ramp replaces the Hamiltonian and leaves the state untouched
  (populations frozen, entropy exactly conserved);
* thermal contact replaces the state with the Gibbs state of the current
  Hamiltonian (full thermalization);
* a measurement stroke applies the non-selective channel;
* the swap stroke conjugates the two-qubit state by the swap unitary.

For the two-qubit cycles the recoupling stroke is booked per reservoir from
the reduced states, one ledger entry per subsystem.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .analytic import (
    AGENT,
    APPARATUS,
    COLD_RESERVOIR,
    HEAT,
    HOT_RESERVOIR,
    QUANTUM_HEAT,
    WORK,
    CycleKind,
    CycleParams,
    LedgerEntry,
    StrokeLedger,
    check_regime,
    ledger as analytic_ledger,
    CycleReport,
)
from .channel import MeasurementChannel
from .errors import StructureMismatchError
from .qstate import (
    COLD,
    HOT,
    DensityOperator,
    QubitHamiltonian,
    apply_unitary,
    expectation_value,
    gibbs_state,
    mean_energy,
    partial_trace,
    swap_unitary,
    tensor,
)

#: Default tolerance when confronting a numeric trace with closed forms.
ORACLE_ATOL = 1e-10
#: Tolerance for structural identities (first law, cycle closure).
STRUCTURAL_ATOL = 1e-12


@dataclass(frozen=True)
class Snapshot:
    """State of the working medium between strokes, with its Hamiltonian."""

    hamiltonian: np.ndarray
    state: DensityOperator

    @property
    def energy(self) -> float:
        return expectation_value(self.hamiltonian, self.state)


@dataclass(frozen=True)
class SimulationTrace:
    """Snapshots, mean energies and the resulting energy ledger of one cycle."""

    kind: CycleKind
    params: CycleParams
    snapshots: tuple[Snapshot, ...]
    energies: tuple[float, ...]
    ledger: StrokeLedger

    def format(self) -> str:
        """One line per ledger entry: index,label,kind,counterpart,value (17 digits)."""
        lines = [
            f"{e.stroke},{e.label},{e.kind},{e.counterpart},{e.value:.17g}"
            for e in self.ledger
        ]
        return "\n".join(lines) + "\n"


def _single_qubit_plan(kind: CycleKind, p: CycleParams):
    h_c = QubitHamiltonian(p.omega_c)
    h_h = QubitHamiltonian(p.omega_h)
    channel = MeasurementChannel(p.xi)

    ramp_up = ("ramp_up", WORK, AGENT, lambda h, rho: (h_h, rho))
    ramp_down = ("ramp_down", WORK, AGENT, lambda h, rho: (h_c, rho))
    hot_contact = ("hot_contact", HEAT, HOT_RESERVOIR, lambda h, rho: (h, gibbs_state(h, p.beta_h)))
    cold_contact = ("cold_contact", HEAT, COLD_RESERVOIR, lambda h, rho: (h, gibbs_state(h, p.beta_c)))
    measurement = ("measurement", QUANTUM_HEAT, APPARATUS, lambda h, rho: (h, channel.apply(rho)))

    if kind is CycleKind.OTTO:
        plan = (ramp_up, hot_contact, ramp_down, cold_contact)
    elif kind is CycleKind.MO1:
        plan = (ramp_up, hot_contact, ramp_down, measurement, cold_contact)
    else:  # MO2
        plan = (measurement, ramp_up, hot_contact, ramp_down, cold_contact)
    return h_c, plan


def _run_single_qubit(kind: CycleKind, p: CycleParams) -> SimulationTrace:
    h_c, plan = _single_qubit_plan(kind, p)
    h, rho = h_c, gibbs_state(h_c, p.beta_c)
    snapshots = [Snapshot(h.matrix, rho)]
    entries = []
    for stroke, (label, entry_kind, counterpart, act) in enumerate(plan, start=1):
        h, rho = act(h, rho)
        snapshots.append(Snapshot(h.matrix, rho))
        value = snapshots[-1].energy - snapshots[-2].energy
        entries.append(LedgerEntry(stroke, label, entry_kind, counterpart, value))
    energies = tuple(s.energy for s in snapshots)
    return SimulationTrace(kind, p, tuple(snapshots), energies, StrokeLedger(tuple(entries)))


def _run_two_qubit(kind: CycleKind, p: CycleParams) -> SimulationTrace:
    h_h = QubitHamiltonian(p.omega_h)
    h_c = QubitHamiltonian(p.omega_c)
    eye = np.eye(2, dtype=np.complex128)
    h_total = np.kron(h_h.matrix, eye) + np.kron(eye, h_c.matrix)
    channel = MeasurementChannel(p.xi)
    rho_h = gibbs_state(h_h, p.beta_h)
    rho_c = gibbs_state(h_c, p.beta_c)

    rho = tensor(rho_h, rho_c)
    snapshots = [Snapshot(h_total, rho)]
    entries = []

    def book(stroke, label, entry_kind, counterpart, new_rho):
        snapshots.append(Snapshot(h_total, new_rho))
        entries.append(LedgerEntry(
            stroke, label, entry_kind, counterpart,
            snapshots[-1].energy - snapshots[-2].energy,
        ))
        return new_rho

    swap_op = swap_unitary()
    if kind is CycleKind.SWAP:
        rho = book(1, "swap", WORK, AGENT, apply_unitary(swap_op, rho))
        recouple_stroke = 2
    elif kind is CycleKind.MS1:
        rho = book(1, "swap", WORK, AGENT, apply_unitary(swap_op, rho))
        rho = book(2, "measurement", QUANTUM_HEAT, APPARATUS, channel.apply_on_subsystem(rho, COLD))
        recouple_stroke = 3
    else:  # MS2
        rho = book(1, "measurement", QUANTUM_HEAT, APPARATUS, channel.apply_on_subsystem(rho, COLD))
        rho = book(2, "swap", WORK, AGENT, apply_unitary(swap_op, rho))
        recouple_stroke = 3

    # Recoupling: each subsystem rethermalizes with its own reservoir; the
    # heats are booked from the reduced states, one entry per reservoir.
    heat_hot = mean_energy(h_h, rho_h) - mean_energy(h_h, partial_trace(rho, HOT))
    heat_cold = mean_energy(h_c, rho_c) - mean_energy(h_c, partial_trace(rho, COLD))
    rho = tensor(rho_h, rho_c)
    snapshots.append(Snapshot(h_total, rho))
    entries.append(LedgerEntry(recouple_stroke, "hot_contact", HEAT, HOT_RESERVOIR, heat_hot))
    entries.append(LedgerEntry(recouple_stroke, "cold_contact", HEAT, COLD_RESERVOIR, heat_cold))

    energies = tuple(s.energy for s in snapshots)
    return SimulationTrace(kind, p, tuple(snapshots), energies, StrokeLedger(tuple(entries)))


def run_cycle(kind: CycleKind | str, p: CycleParams) -> SimulationTrace:
    """Execute the named cycle on explicit density operators.

    The trace's ledger carries one entry per stroke (two for a recoupling
    stroke), and the final snapshot equals the initial one: the cycle closes.
    """
    kind = CycleKind(kind)
    check_regime(p)
    if kind in (CycleKind.OTTO, CycleKind.MO1, CycleKind.MO2):
        return _run_single_qubit(kind, p)
    return _run_two_qubit(kind, p)


@dataclass(frozen=True)
class LedgerComparison:
    """Per-entry confrontation of a numeric ledger with a reference one."""

    diffs: tuple[tuple[str, float], ...]
    tol: float

    @property
    def max_abs_diff(self) -> float:
        return max(d for _, d in self.diffs)

    @property
    def worst_label(self) -> str:
        return max(self.diffs, key=lambda pair: pair[1])[0]

    @property
    def passed(self) -> bool:
        return self.max_abs_diff <= self.tol


def compare_entries(numeric, reference, tol: float = ORACLE_ATOL) -> LedgerComparison:
    """Compare two ledger-entry sequences; they must agree structurally."""
    numeric, reference = tuple(numeric), tuple(reference)
    if len(numeric) != len(reference):
        raise StructureMismatchError(
            f"entry counts differ: {len(numeric)} numeric vs {len(reference)} reference"
        )
    diffs = []
    for a, b in zip(numeric, reference):
        if (a.stroke, a.label, a.kind, a.counterpart) != (b.stroke, b.label, b.kind, b.counterpart):
            raise StructureMismatchError(
                f"entry mismatch: {a.stroke}/{a.label} vs {b.stroke}/{b.label}"
            )
        diffs.append((a.label, abs(a.value - b.value)))
    return LedgerComparison(tuple(diffs), tol)


def compare_to_analytic(
    trace: SimulationTrace,
    reference: CycleReport | StrokeLedger | None = None,
    tol: float = ORACLE_ATOL,
) -> LedgerComparison:
    """Confront a simulated trace with the closed-form ledger of the same cycle.

    With ``reference=None`` the analytic ledger is computed from the trace's
    own kind and parameters.
    """
    if reference is None:
        reference = analytic_ledger(trace.kind, trace.params)
    elif isinstance(reference, CycleReport):
        reference = reference.ledger
    return compare_entries(trace.ledger, reference, tol)


def closure_error(trace: SimulationTrace) -> float:
    """Max absolute deviation between the final and initial density operators."""
    first, last = trace.snapshots[0].state, trace.snapshots[-1].state
    return float(np.abs(first.matrix - last.matrix).max())


def perturbed_entries(entries, amount: float = 1e-6):
    """Copy of a ledger's entries with the first value shifted by ``amount``.

    Used by the verification harness to prove it detects a wrong formula.
    """
    entries = tuple(entries)
    return (replace(entries[0], value=entries[0].value + amount),) + entries[1:]
