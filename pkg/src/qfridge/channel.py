"""Generalized measurement channel with adjustable strength.

The channel is defined by two Kraus operators acting on a qubit,

    M1 = |0><0| + sqrt(1 - xi) |1><1|,      M2 = sqrt(xi) |0><1|,

with strength ``xi`` in [0, 1]: xi = 0 leaves the state untouched, xi = 1 is
a projective reset of the excited population onto the ground state.  Applied
non-selectively the channel maps diag(p0, p1) to diag(p0 + xi*p1, (1-xi)*p1),
which removes energy from the system and never creates ergotropy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .qstate import (
    COLD,
    HOT,
    DensityOperator,
    QubitHamiltonian,
    hermitian_eigenvalues,
    mean_energy,
)

PASSIVITY_ATOL = 1e-12


@dataclass(frozen=True)
class MeasurementChannel:
    """Non-selective generalized measurement of strength ``xi``."""

    xi: float

    def __post_init__(self):
        xi = float(self.xi)
        # strict bounds: sqrt(1 - xi) must stay real
        if not np.isfinite(xi) or xi < 0.0 or xi > 1.0:
            raise InvalidParameterError(f"measurement strength must lie in [0, 1], got {xi!r}")
        object.__setattr__(self, "xi", xi)

    def kraus_operators(self) -> tuple[np.ndarray, np.ndarray]:
        m1 = np.diag([1.0, np.sqrt(1.0 - self.xi)]).astype(np.complex128)
        m2 = np.zeros((2, 2), dtype=np.complex128)
        m2[0, 1] = np.sqrt(self.xi)
        return m1, m2

    def povm_elements(self) -> tuple[np.ndarray, np.ndarray]:
        """E_i = M_i^dag M_i; they sum to the identity."""
        m1, m2 = self.kraus_operators()
        return m1.conj().T @ m1, m2.conj().T @ m2

    def apply(self, rho: DensityOperator) -> DensityOperator:
        """Kraus sum M1 rho M1^dag + M2 rho M2^dag on a qubit state."""
        if rho.dim != 2:
            raise InvalidParameterError(f"channel acts on qubits, got dimension {rho.dim}")
        m1, m2 = self.kraus_operators()
        out = m1 @ rho.matrix @ m1.conj().T + m2 @ rho.matrix @ m2.conj().T
        return DensityOperator(out)

    def apply_on_subsystem(self, rho: DensityOperator, target: str) -> DensityOperator:
        """Act on one factor of a two-qubit state (identity on the other)."""
        if rho.dim != 4:
            raise InvalidParameterError(f"expected a two-qubit state, got dimension {rho.dim}")
        if target not in (HOT, COLD):
            raise InvalidParameterError(f"target must be 'hot' or 'cold', got {target!r}")
        eye = np.eye(2, dtype=np.complex128)
        out = np.zeros((4, 4), dtype=np.complex128)
        for m in self.kraus_operators():
            lifted = np.kron(m, eye) if target == HOT else np.kron(eye, m)
            out += lifted @ rho.matrix @ lifted.conj().T
        return DensityOperator(out)


def ergotropy(rho: DensityOperator, h: QubitHamiltonian) -> float:
    """Maximum work extractable from a qubit state by a unitary.

    For a qubit the optimum is reached by sorting the spectrum against the
    energies: the passive energy is lambda_max * E_ground + lambda_min *
    E_excited, so no search over unitaries is needed.
    """
    if rho.dim != 2:
        raise InvalidParameterError(f"ergotropy is implemented for qubits, got dimension {rho.dim}")
    lam_min, lam_max = hermitian_eigenvalues(rho.matrix)
    e_ground, e_excited = h.energies
    passive_energy = lam_max * e_ground + lam_min * e_excited
    return mean_energy(h, rho) - passive_energy


def is_passive(rho: DensityOperator, h: QubitHamiltonian) -> bool:
    """True when no unitary can extract work from ``rho`` under ``h``."""
    return ergotropy(rho, h) <= PASSIVITY_ATOL
