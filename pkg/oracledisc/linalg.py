"""
Dense complex linear algebra for the oracle discrimination toolkit.
Validated state types, Hermitian eigendecomposition, trace norm and the
computational-basis dephasing map.
"""

import logging
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Union

import numpy as np

from .config import config
from .errors import ValidationError

logger = logging.getLogger(__name__)

# Dense square complex array; all operators in the package use this layout.
ComplexMatrix = np.ndarray

MatrixLike = Union[np.ndarray, Sequence[Sequence[complex]]]


def as_matrix(a: MatrixLike) -> ComplexMatrix:
    """Copy `a` into a read-only square complex128 array."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValidationError(f"Expected a non-empty square matrix, got shape {m.shape}")
    m.setflags(write=False)
    return m


def max_abs(a: np.ndarray) -> float:
    """Largest entry magnitude (0 for empty input)."""
    return float(np.max(np.abs(a))) if a.size else 0.0


def max_asymmetry(a: ComplexMatrix) -> float:
    """max |A_xy - conj(A_yx)|."""
    return max_abs(a - a.conj().T)


def commutator(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    return a @ b - b @ a


def qubit_count(dim: int) -> Optional[int]:
    """n with 2**n == dim, or None when dim is not a power of two."""
    n = dim.bit_length() - 1
    return n if dim == 1 << n else None


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state in the computational basis."""

    amplitudes: np.ndarray
    tol: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size < 1:
            raise ValidationError("State vector must have at least one amplitude")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > config.tol(self.tol):
            raise ValidationError(f"State vector is not normalized: sum |a|^2 = {norm_sq!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, amplitudes: Sequence[complex]) -> "StateVector":
        """Build a state by rescaling arbitrary nonzero amplitudes."""
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValidationError("Cannot normalize the zero vector")
        return cls(amps / norm)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)

    @property
    def n_qubits(self) -> Optional[int]:
        return qubit_count(self.dim)

    def projector(self) -> "DensityOperator":
        """|psi><psi| as a density operator."""
        return DensityOperator(np.outer(self.amplitudes, self.amplitudes.conj()), tol=self.tol)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Unit-trace positive-semidefinite Hermitian operator."""

    matrix: ComplexMatrix
    tol: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        tol = config.tol(self.tol)

        asym = max_asymmetry(m)
        if asym > tol:
            raise ValidationError(f"Density operator is not Hermitian: max asymmetry {asym:.3e}")

        trace = complex(np.trace(m))
        if abs(trace - 1.0) > tol:
            raise ValidationError(f"Density operator trace is {trace.real:.12g}{trace.imag:+.3g}j, expected 1")

        lowest = float(np.linalg.eigvalsh(m)[0])
        if lowest < -tol:
            raise ValidationError(f"Density operator has negative eigenvalue {lowest:.3e}")

        object.__setattr__(self, "matrix", m)

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityOperator":
        return cls(np.eye(dim, dtype=np.complex128) / dim)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def n_qubits(self) -> Optional[int]:
        return qubit_count(self.dim)

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in descending order."""
        return np.linalg.eigvalsh(self.matrix)[::-1]

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def rank(self, rank_tol: Optional[float] = None) -> int:
        threshold = config.RANK_TOLERANCE if rank_tol is None else rank_tol
        return int(np.count_nonzero(self.eigenvalues() > threshold))


class EigenDecomposition(NamedTuple):
    """Descending eigenvalues with matching orthonormal eigenvectors."""
    values: np.ndarray
    vectors: List[StateVector]

    def basis(self) -> ComplexMatrix:
        """Eigenvectors as the columns of a unitary matrix."""
        return np.column_stack([v.amplitudes for v in self.vectors])


def _as_operator(a: Union[MatrixLike, DensityOperator]) -> ComplexMatrix:
    return a.matrix if isinstance(a, DensityOperator) else as_matrix(a)


def hermitian_eig(a: Union[MatrixLike, DensityOperator], tol: Optional[float] = None) -> EigenDecomposition:
    """
    Eigendecomposition of a Hermitian matrix.

    Args:
        a: Hermitian matrix (or density operator)
        tol: Hermiticity tolerance, defaults to the configured one

    Returns:
        Eigenvalues in descending order and the orthonormal eigenvectors
    """
    m = _as_operator(a)
    asym = max_asymmetry(m)
    if asym > config.tol(tol):
        raise ValidationError(f"Matrix is not Hermitian: max asymmetry {asym:.3e}")

    values, vectors = np.linalg.eigh(m)
    values = values[::-1].copy()
    vectors = vectors[:, ::-1]
    states = [StateVector(vectors[:, j], tol=1e-8) for j in range(vectors.shape[1])]
    return EigenDecomposition(values, states)


def trace_norm(a: Union[MatrixLike, DensityOperator]) -> float:
    """
    Sum of singular values.

    Hermitian input goes through the eigenvalues, anything else through the SVD.
    """
    m = _as_operator(a)
    if np.allclose(m, m.conj().T, rtol=0.0, atol=1e-13):
        return float(np.sum(np.abs(np.linalg.eigvalsh(m))))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def diagonal_part(a: MatrixLike) -> ComplexMatrix:
    """Sum_x P_x A P_x for an arbitrary square operator."""
    m = as_matrix(a)
    out = np.diag(np.diag(m))
    out.setflags(write=False)
    return out


def dephase(rho: DensityOperator) -> DensityOperator:
    """Computational-basis dephasing: keep the diagonal, drop every coherence."""
    return DensityOperator(diagonal_part(rho.matrix), tol=rho.tol)


# Seeded random ensembles

def random_unitary(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar-random unitary via QR of a Ginibre matrix with the phase fix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_state(dim: int, rng: np.random.Generator) -> StateVector:
    """Haar-random pure state."""
    return StateVector.normalized(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))


def random_density(dim: int, rng: np.random.Generator, rank: Optional[int] = None) -> DensityOperator:
    """Random density operator of the given rank (full rank by default)."""
    k = dim if rank is None else rank
    if not 1 <= k <= dim:
        raise ValidationError(f"Rank must be in [1, {dim}], got {k}")
    g = rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2.0
    return DensityOperator(m / np.trace(m).real)


def random_hermitian(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2.0
