"""Dense complex-matrix kernel for one- and two-qubit thermodynamics.

Conventions used everywhere in this package (hbar = k_B = 1):

* qubit basis is ordered (|0>, |1>) with |0> the ground state, so a
  transition frequency ``omega`` gives the Hamiltonian
  ``(omega/2) * diag(-1, +1)``;
* two-qubit basis is ordered (|00>, |01>, |10>, |11>) with the *left*
  digit belonging to the hot subsystem (first tensor factor).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

# Construction-time tolerances for density operators.
HERMITICITY_ATOL = 1e-12
TRACE_ATOL = 1e-12
EIGENVALUE_FLOOR = -1e-12
UNITARITY_ATOL = 1e-12

# Eigenvalues below this are treated as exact zeros when taking logs.
_ENTROPY_CLAMP = 1e-14

HOT, COLD = "hot", "cold"


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise InvalidParameterError(f"{name} must be finite, got {value!r}")
    return value


def as_complex_matrix(matrix) -> np.ndarray:
    """Coerce to a square complex128 array of dimension 2 or 4."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidParameterError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] not in (2, 4):
        raise InvalidParameterError(f"supported dimensions are 2 and 4, got {m.shape[0]}")
    if not np.isfinite(m).all():
        raise InvalidParameterError("matrix entries must be finite")
    return m


def hermitian_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian 2x2 or 4x4 matrix.

    The 2x2 case is solved in closed form; 4x4 falls back to LAPACK.
    """
    if matrix.shape[0] == 2:
        a = matrix[0, 0].real
        c = matrix[1, 1].real
        half_gap = np.hypot((a - c) / 2.0, abs(matrix[0, 1]))
        mid = (a + c) / 2.0
        return np.array([mid - half_gap, mid + half_gap])
    return np.linalg.eigvalsh(matrix)


class DensityOperator:
    """Trace-one positive-semidefinite Hermitian matrix of dimension 2 or 4.

    Instances are immutable; the backing array is read-only.
    """

    __slots__ = ("_matrix",)

    def __init__(self, matrix):
        m = as_complex_matrix(matrix)
        dev = np.abs(m - m.conj().T).max()
        if dev > HERMITICITY_ATOL:
            raise InvalidParameterError(f"matrix is not Hermitian: max |rho - rho^dag| = {dev:.3e}")
        trace_dev = abs(m.trace() - 1.0)
        if trace_dev > TRACE_ATOL:
            raise InvalidParameterError(f"matrix has trace {m.trace():.15g}, expected 1")
        lo = hermitian_eigenvalues(m)[0]
        if lo < EIGENVALUE_FLOOR:
            raise InvalidParameterError(f"matrix is not positive semidefinite: min eigenvalue {lo:.3e}")
        m.setflags(write=False)
        self._matrix = m

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @property
    def populations(self) -> np.ndarray:
        """Real diagonal of the matrix."""
        return np.diag(self._matrix).real.copy()

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self._matrix)

    def allclose(self, other: "DensityOperator", atol: float = 1e-12) -> bool:
        return self.dim == other.dim and bool(np.abs(self._matrix - other._matrix).max() <= atol)

    @classmethod
    def from_populations(cls, populations) -> "DensityOperator":
        return cls(np.diag(np.asarray(populations, dtype=np.float64)))

    def __repr__(self) -> str:
        return f"DensityOperator(dim={self.dim}, populations={self.populations.tolist()})"


@dataclass(frozen=True)
class QubitHamiltonian:
    """Two-level Hamiltonian (omega/2) * diag(-1, +1); |0> is the ground state."""

    omega: float

    def __post_init__(self):
        omega = _require_finite("omega", self.omega)
        if omega <= 0:
            raise InvalidParameterError(f"omega must be positive, got {omega!r}")
        object.__setattr__(self, "omega", omega)

    @property
    def matrix(self) -> np.ndarray:
        return np.diag([-0.5 * self.omega, 0.5 * self.omega]).astype(np.complex128)

    @property
    def energies(self) -> tuple[float, float]:
        return (-0.5 * self.omega, 0.5 * self.omega)


def gibbs_state(h: QubitHamiltonian, beta: float) -> DensityOperator:
    """Thermal state exp(-beta*H)/Z of a qubit.

    Populations are exp(+beta*omega/2)/Z on |0> and exp(-beta*omega/2)/Z on
    |1> with Z = 2*cosh(beta*omega/2), evaluated through exp(-beta*omega)
    so arbitrarily large beta*omega cannot overflow.
    """
    beta = _require_finite("beta", beta)
    if beta < 0:
        raise InvalidParameterError(f"beta must be non-negative, got {beta!r}")
    boltzmann = np.exp(-beta * h.omega)  # underflows to 0 at zero temperature
    p0 = 1.0 / (1.0 + boltzmann)
    return DensityOperator(np.diag([p0, 1.0 - p0]))


def mean_energy(h: QubitHamiltonian, rho: DensityOperator) -> float:
    """Tr[H rho] for a qubit state."""
    return expectation_value(h.matrix, rho)


def expectation_value(operator: np.ndarray, rho: DensityOperator) -> float:
    """Tr[A rho] for a Hermitian operator A; the imaginary residue must be roundoff."""
    op = as_complex_matrix(operator)
    if op.shape[0] != rho.dim:
        raise InvalidParameterError(f"operator dimension {op.shape[0]} != state dimension {rho.dim}")
    value = np.trace(op @ rho.matrix)
    if abs(value.imag) > 1e-12:
        raise InvalidParameterError(f"expectation has non-negligible imaginary part {value.imag:.3e}")
    return float(value.real)


def tensor(hot: DensityOperator, cold: DensityOperator) -> DensityOperator:
    """Kronecker product hot (x) cold; the hot subsystem is the left factor."""
    if hot.dim != 2 or cold.dim != 2:
        raise InvalidParameterError("tensor expects two qubit states")
    return DensityOperator(np.kron(hot.matrix, cold.matrix))


def partial_trace(rho: DensityOperator, keep: str) -> DensityOperator:
    """Reduce a two-qubit state to the ``hot`` (left) or ``cold`` (right) factor."""
    if rho.dim != 4:
        raise InvalidParameterError("partial_trace expects a two-qubit state")
    r = rho.matrix.reshape(2, 2, 2, 2)
    if keep == HOT:
        reduced = np.trace(r, axis1=1, axis2=3)
    elif keep == COLD:
        reduced = np.trace(r, axis1=0, axis2=2)
    else:
        raise InvalidParameterError(f"keep must be 'hot' or 'cold', got {keep!r}")
    return DensityOperator(reduced)


def apply_unitary(u: np.ndarray, rho: DensityOperator) -> DensityOperator:
    """Conjugate rho by a unitary: U rho U^dag."""
    u = as_complex_matrix(u)
    if u.shape[0] != rho.dim:
        raise InvalidParameterError(f"unitary dimension {u.shape[0]} != state dimension {rho.dim}")
    dev = np.abs(u.conj().T @ u - np.eye(rho.dim)).max()
    if dev > UNITARITY_ATOL:
        raise InvalidParameterError(f"matrix is not unitary: max |U^dag U - I| = {dev:.3e}")
    return DensityOperator(u @ rho.matrix @ u.conj().T)


def swap_unitary() -> np.ndarray:
    """Two-qubit unitary exchanging the hot and cold factors.

    In the ordered basis (|00>, |01>, |10>, |11>) it maps |01> <-> |10> and
    leaves |00>, |11> fixed.
    """
    u = np.zeros((4, 4), dtype=np.complex128)
    u[0, 0] = u[3, 3] = 1.0
    u[1, 2] = u[2, 1] = 1.0
    return u


def von_neumann_entropy(rho: DensityOperator) -> float:
    """-sum(lambda * ln(lambda)) over eigenvalues, in nats; 0*ln(0) := 0."""
    lams = rho.eigenvalues()
    lams = np.where(lams < _ENTROPY_CLAMP, 0.0, lams)
    nonzero = lams[lams > 0.0]
    return float(-(nonzero * np.log(nonzero)).sum())
