"""Randomized cross-verification of the closed forms against the simulator.

One run draws a seeded sample of valid parameter sets, executes all six
cycles numerically on each, and confronts every per-stroke energy with its
closed-form value.  It also sweeps the structural invariant suites: first
law, cycle closure, swap/Otto equivalence, the measurement-engine identity,
the critical-strength contract, channel completeness and passivity.

The report is plain deterministic text: identical seeds give identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analytic, analysis
from .analytic import CycleKind, CycleParams
from .channel import MeasurementChannel, ergotropy
from .qstate import QubitHamiltonian, gibbs_state
from .simulate import (
    ORACLE_ATOL,
    STRUCTURAL_ATOL,
    closure_error,
    compare_entries,
    perturbed_entries,
    run_cycle,
)

EQUIVALENCE_ATOL = 1e-13
COMPLETENESS_ATOL = 1e-14
PASSIVITY_ATOL = 1e-12
_FAULT_SIZE = 1e-6


@dataclass(frozen=True)
class CheckResult:
    name: str
    points: int
    max_abs_error: float
    tol: float
    worst_detail: str

    @property
    def passed(self) -> bool:
        return self.max_abs_error <= self.tol


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    count: int
    tol: float
    cycles: tuple[CheckResult, ...]
    invariants: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cycles + self.invariants)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.cycles + self.invariants if not c.passed)

    def format(self) -> str:
        lines = [
            "# qfridge verify",
            f"# seed={self.seed} count={self.count} tol={self.tol:.17g}",
            "section,name,points,max_abs_error,tolerance,worst,status",
        ]
        for section, results in (("cycle", self.cycles), ("invariant", self.invariants)):
            for c in results:
                status = "ok" if c.passed else "FAIL"
                lines.append(
                    f"{section},{c.name},{c.points},{c.max_abs_error:.17g},"
                    f"{c.tol:.17g},{c.worst_detail},{status}"
                )
        lines.append(f"result,{'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _params_detail(p: CycleParams) -> str:
    return (
        f"omega_c={p.omega_c:.17g} omega_h={p.omega_h:.17g} "
        f"beta_c={p.beta_c:.17g} beta_h={p.beta_h:.17g} xi={p.xi:.17g}"
    )


class _Worst:
    """Track the largest error seen and a reproduction string for it."""

    def __init__(self):
        self.error = 0.0
        self.detail = "-"
        self.points = 0

    def update(self, error: float, detail: str, points: int = 1):
        self.points += points
        if error > self.error:
            self.error = error
            self.detail = detail

    def result(self, name: str, tol: float) -> CheckResult:
        return CheckResult(name, self.points, self.error, tol, self.detail)


_REPORT_SCALARS = ("w_in", "w_ex", "w_meas", "q_c_total", "q_h_total", "cop")
_SHARED_LABELS = ("measurement", "hot_contact", "cold_contact")


def _equivalence_error(swap_kind: CycleKind, otto_kind: CycleKind, p: CycleParams) -> float:
    """Worst scalar difference between a swap-cycle report and its Otto twin."""
    a = analytic.report(swap_kind, p)
    b = analytic.report(otto_kind, p)
    worst = max(
        abs(getattr(a, name) - getattr(b, name)) for name in _REPORT_SCALARS
    )
    for label in _SHARED_LABELS:
        worst = max(worst, abs(a.ledger.value(label) - b.ledger.value(label)))
    return worst


def run_verification(
    seed: int,
    count: int,
    tol: float = ORACLE_ATOL,
    inject_fault: bool = False,
) -> VerificationReport:
    """Full randomized verification sweep; see the module docstring.

    ``inject_fault`` perturbs one closed-form ledger entry per comparison and
    exists only to prove the harness reports failures (self-test).
    """
    params = analysis.random_params(count, seed)

    cycle_worst = {kind: _Worst() for kind in CycleKind}
    first_law = _Worst()
    closure = _Worst()
    equivalence = _Worst()
    engine_identity = _Worst()
    engine_efficiency = _Worst()
    critical_bisect = _Worst()
    critical_range = _Worst()
    critical_wex = _Worst()

    for p in params:
        detail = _params_detail(p)
        for kind in CycleKind:
            trace = run_cycle(kind, p)
            reference = analytic.ledger(kind, p).entries
            if inject_fault:
                reference = perturbed_entries(reference, _FAULT_SIZE)
            comparison = compare_entries(trace.ledger, reference, tol)
            cycle_worst[kind].update(
                comparison.max_abs_diff, f"{comparison.worst_label} {detail}"
            )
            first_law.update(abs(trace.ledger.total()), f"simulated {kind} {detail}")
            first_law.update(abs(analytic.ledger(kind, p).total()), f"analytic {kind} {detail}")
            closure.update(closure_error(trace), f"{kind} {detail}")

        equivalence.update(_equivalence_error(CycleKind.MS1, CycleKind.MO1, p), f"ms1-mo1 {detail}")
        equivalence.update(_equivalence_error(CycleKind.MS2, CycleKind.MO2, p), f"ms2-mo2 {detail}")

        residual = abs(analytic.w_meas(p) + analytic.q_prime(p) + analytic.q_meas_cold(p))
        engine_identity.update(residual, detail)
        if p.xi > 0.0:
            eff = analytic.mo2_engine_efficiency(p)
            engine_efficiency.update(abs(eff.ledger_ratio - eff.closed_form), detail)

        xi_closed = analytic.xi_critical(p)
        xi_numeric = analysis.find_xi_critical_numeric(p)
        critical_bisect.update(abs(xi_closed - xi_numeric), detail)
        critical_range.update(0.0 if 0.0 < xi_closed < 1.0 else 1.0, detail)
        critical_wex.update(abs(analytic.w_ex(p.with_xi(xi_closed))), detail)

    completeness = _Worst()
    for xi in np.linspace(0.0, 1.0, 101):
        m1, m2 = MeasurementChannel(float(xi)).kraus_operators()
        dev = np.abs(m1.conj().T @ m1 + m2.conj().T @ m2 - np.eye(2)).max()
        completeness.update(float(dev), f"xi={xi:.17g}")

    passivity = _Worst()
    for p in params:
        channel = MeasurementChannel(p.xi)
        h_c = QubitHamiltonian(p.omega_c)
        for omega, beta in ((p.omega_h, p.beta_h), (p.omega_c, p.beta_c)):
            thermal = gibbs_state(QubitHamiltonian(omega), beta)
            ergo = ergotropy(channel.apply(thermal), h_c)
            passivity.update(max(ergo, 0.0), f"omega={omega:.17g} {_params_detail(p)}")

    cycles = tuple(cycle_worst[kind].result(str(kind), tol) for kind in CycleKind)
    invariants = (
        first_law.result("first_law", STRUCTURAL_ATOL),
        closure.result("cycle_closure", STRUCTURAL_ATOL),
        equivalence.result("swap_otto_equivalence", EQUIVALENCE_ATOL),
        engine_identity.result("engine_identity", STRUCTURAL_ATOL),
        engine_efficiency.result("engine_efficiency", 1e-13),
        critical_bisect.result("xi_critical_bisection", 1e-10),
        critical_range.result("xi_critical_in_open_interval", 0.5),
        critical_wex.result("w_ex_at_xi_critical", STRUCTURAL_ATOL),
        completeness.result("channel_completeness", COMPLETENESS_ATOL),
        passivity.result("passivity", PASSIVITY_ATOL),
    )
    return VerificationReport(seed, count, tol, cycles, invariants)
