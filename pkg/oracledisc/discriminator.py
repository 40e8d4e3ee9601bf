"""
Minimum-error discrimination between the constant and balanced channels.

Helstrom error and measurement, the certainty conditions on the initial
state, the family of states that reach zero error, and single-shot runs of
the algorithm against individual oracle functions.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .channels import balanced_output, channel_constant
from .config import config
from .constants import FunctionClass
from .errors import DomainError, ValidationError
from .linalg import (
    ComplexMatrix,
    DensityOperator,
    StateVector,
    as_matrix,
    commutator,
    diagonal_part,
    hermitian_eig,
    max_abs,
    max_asymmetry,
    trace_norm,
)
from .oracle import OracleFunction, apply_oracle_density, classify
from .runner import SweepRunner

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DiscriminationProblem:
    """Two channel outputs with the prior probability of each class."""

    rho_const: DensityOperator
    rho_bal: DensityOperator
    p_const: float = 0.5
    p_bal: float = 0.5
    tol: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        tol = config.tol(self.tol)
        if self.rho_const.dim != self.rho_bal.dim:
            raise ValidationError(
                f"Channel outputs differ in dimension: {self.rho_const.dim} vs {self.rho_bal.dim}"
            )
        if self.p_const < 0 or self.p_bal < 0:
            raise ValidationError(f"Priors must be nonnegative, got ({self.p_const}, {self.p_bal})")
        if abs(self.p_const + self.p_bal - 1.0) > tol:
            raise ValidationError(f"Priors sum to {self.p_const + self.p_bal!r}, expected 1")

    @classmethod
    def from_initial_state(
        cls,
        rho0: DensityOperator,
        p_const: float = 0.5,
        weights: Optional[Sequence[float]] = None,
    ) -> "DiscriminationProblem":
        """Push rho0 through both class channels (uniform balanced weights unless given)."""
        return cls(
            rho_const=channel_constant(rho0),
            rho_bal=balanced_output(rho0, weights).output,
            p_const=p_const,
            p_bal=1.0 - p_const,
        )

    @property
    def equal_priors(self) -> bool:
        return abs(self.p_const - self.p_bal) <= config.tol(self.tol)

    @property
    def dim(self) -> int:
        return self.rho_const.dim

    def delta(self) -> ComplexMatrix:
        """p_const rho_const - p_bal rho_bal."""
        return self.p_const * self.rho_const.matrix - self.p_bal * self.rho_bal.matrix


@dataclass(frozen=True, eq=False)
class Povm2:
    """Two-outcome measurement: pi_const + pi_bal = I."""

    pi_const: ComplexMatrix
    pi_bal: ComplexMatrix
    tol: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        tol = config.tol(self.tol)
        pi_const = as_matrix(self.pi_const)
        pi_bal = as_matrix(self.pi_bal)
        if pi_const.shape != pi_bal.shape:
            raise ValidationError(f"POVM elements differ in shape: {pi_const.shape} vs {pi_bal.shape}")

        for name, element in (("pi_const", pi_const), ("pi_bal", pi_bal)):
            asym = max_asymmetry(element)
            if asym > tol:
                raise ValidationError(f"{name} is not Hermitian: max asymmetry {asym:.3e}")
            values = np.linalg.eigvalsh(element)
            if values[0] < -tol or values[-1] > 1.0 + tol:
                raise ValidationError(
                    f"{name} eigenvalues leave [0, 1]: range [{values[0]:.3e}, {values[-1]:.3e}]"
                )

        gap = max_abs(pi_const + pi_bal - np.eye(pi_const.shape[0]))
        if gap > tol:
            raise ValidationError(f"POVM is incomplete: max |pi_const + pi_bal - I| = {gap:.3e}")

        object.__setattr__(self, "pi_const", pi_const)
        object.__setattr__(self, "pi_bal", pi_bal)

    @classmethod
    def from_const(cls, pi_const: ComplexMatrix, tol: Optional[float] = None) -> "Povm2":
        """Complete a POVM from its constant-outcome element."""
        m = as_matrix(pi_const)
        return cls(m, np.eye(m.shape[0]) - m, tol=tol)

    @property
    def dim(self) -> int:
        return int(self.pi_const.shape[0])


@dataclass(frozen=True)
class EigenSummary:
    """Rank and spectrum of rho0 next to Lambda's expectation in each eigenvector."""

    rank: int
    r: Tuple[float, ...]
    lambdas: Tuple[float, ...]
    lambda_residual: float


@dataclass(frozen=True)
class CertaintyReport:
    """Residuals of the two commutation conditions for zero-error discrimination."""

    commutator_norm: float
    cond2_residual: float
    certain: bool
    eigen_summary: EigenSummary


class OutcomeProbabilities(NamedTuple):
    p_const: float
    p_bal: float


class FunctionOutcome(NamedTuple):
    function: OracleFunction
    function_class: FunctionClass
    probabilities: OutcomeProbabilities
    correct: bool


def _real_trace(a: np.ndarray, b: np.ndarray) -> float:
    """Re Tr[A B] without forming the product."""
    return float(np.real(np.sum(a * b.T)))


def _probability(value: float) -> float:
    return float(min(1.0, max(0.0, value)))


def helstrom_error(prob: DiscriminationProblem) -> float:
    """1/2 (1 - ||p_const rho_const - p_bal rho_bal||), clipped to [0, 1/2]."""
    value = 0.5 * (1.0 - trace_norm(prob.delta()))
    return float(min(0.5, max(0.0, value)))


def povm_error(prob: DiscriminationProblem, povm: Povm2) -> float:
    """
    p_const Tr[rho_bal pi_const] + p_bal Tr[rho_const pi_bal].

    Each prior weights the other class's misfire; with equal priors this is
    the misclassification probability (see misclassification_error otherwise).
    """
    if povm.dim != prob.dim:
        raise ValidationError(f"POVM dimension {povm.dim} does not match problem dimension {prob.dim}")
    return _probability(
        prob.p_const * _real_trace(prob.rho_bal.matrix, povm.pi_const)
        + prob.p_bal * _real_trace(prob.rho_const.matrix, povm.pi_bal)
    )


def misclassification_error(prob: DiscriminationProblem, povm: Povm2) -> float:
    """p_const Tr[rho_const pi_bal] + p_bal Tr[rho_bal pi_const] at any priors."""
    if povm.dim != prob.dim:
        raise ValidationError(f"POVM dimension {povm.dim} does not match problem dimension {prob.dim}")
    return _probability(
        prob.p_const * _real_trace(prob.rho_const.matrix, povm.pi_bal)
        + prob.p_bal * _real_trace(prob.rho_bal.matrix, povm.pi_const)
    )


def helstrom_povm(prob: DiscriminationProblem, tol: Optional[float] = None) -> Povm2:
    """
    Measurement reaching the Helstrom error.

    pi_const projects onto the nonnegative eigenspace of the weighted
    difference; numerically zero eigenvalues go to pi_const.
    """
    decomposition = hermitian_eig(prob.delta(), tol=tol)
    keep = decomposition.values >= -config.tol(tol)
    basis = decomposition.basis()[:, keep]
    pi_const = basis @ basis.conj().T
    return Povm2.from_const((pi_const + pi_const.conj().T) / 2.0, tol=tol)


def orthogonal_support(a: DensityOperator, b: DensityOperator, tol: Optional[float] = None) -> bool:
    """True iff a b = b a = 0 entrywise within tol."""
    limit = config.tol(tol)
    return max_abs(a.matrix @ b.matrix) <= limit and max_abs(b.matrix @ a.matrix) <= limit


def certainty_conditions(
    rho0: DensityOperator,
    tol: Optional[float] = None,
    rank_tol: Optional[float] = None,
) -> CertaintyReport:
    """
    Check [rho0, Lambda] = 0 and N Lambda rho0 = rho0^2, Lambda = dephase(rho0).

    Residuals are max-entry magnitudes. The eigen summary lists the nonzero
    eigenvalues r_j of rho0 and <phi_j|Lambda|phi_j>, which equal r_j / N
    whenever both conditions hold.
    """
    limit = config.tol(tol)
    threshold = config.RANK_TOLERANCE if rank_tol is None else rank_tol
    m = rho0.matrix
    lam = diagonal_part(m)
    size = rho0.dim

    commutator_norm = max_abs(commutator(m, lam))
    cond2_residual = max_abs(size * lam @ m - m @ m)

    decomposition = hermitian_eig(rho0)
    support = [j for j, value in enumerate(decomposition.values) if value > threshold]
    r = tuple(float(decomposition.values[j]) for j in support)
    lambdas = tuple(
        float(np.real(np.vdot(decomposition.vectors[j].amplitudes, lam @ decomposition.vectors[j].amplitudes)))
        for j in support
    )
    residual = max((abs(lj - rj / size) for lj, rj in zip(lambdas, r)), default=0.0)

    certain = commutator_norm <= limit and cond2_residual <= limit
    logger.debug(
        "Certainty residuals: commutator %.3e, second condition %.3e, rank %d",
        commutator_norm, cond2_residual, len(r),
    )
    return CertaintyReport(
        commutator_norm=commutator_norm,
        cond2_residual=cond2_residual,
        certain=certain,
        eigen_summary=EigenSummary(rank=len(r), r=r, lambdas=lambdas, lambda_residual=residual),
    )


def uniform_rank_one(rho0: DensityOperator, tol: Optional[float] = None, rank_tol: Optional[float] = None) -> bool:
    """rho0 = |psi><psi| with |psi(x)|^2 = 1/N for every x."""
    if rho0.rank(rank_tol) != 1:
        return False
    top = hermitian_eig(rho0).vectors[0].amplitudes
    return max_abs(np.abs(top) ** 2 - 1.0 / rho0.dim) <= config.tol(tol)


def optimal_state(n: int, phases: Sequence[float]) -> StateVector:
    """(1/sqrt N) sum_x exp(i theta_x) |x>."""
    size = 1 << n
    theta = np.asarray(phases, dtype=np.float64).reshape(-1)
    if theta.size != size:
        raise ValidationError(f"Expected {size} phases for n={n}, got {theta.size}")
    return StateVector(np.exp(1j * theta) / np.sqrt(size))


def fourth_moment(state: StateVector) -> float:
    """sum_x |phi(x)|^4; at least 1/N, with equality only for uniform magnitudes."""
    return float(np.sum(np.abs(state.amplitudes) ** 4))


def optimal_povm(state: StateVector, tol: Optional[float] = None) -> Povm2:
    """pi_const = |Psi0><Psi0|, pi_bal = I - |Psi0><Psi0|."""
    return Povm2.from_const(np.outer(state.amplitudes, state.amplitudes.conj()), tol=tol)


def closed_form_error(rho0: DensityOperator, p_const: float = 0.5) -> float:
    """
    Minimum error written directly in terms of rho0 and Lambda.

    1/2 (1 - ||(p_const + p_bal/(N-1)) rho0 - p_bal N/(N-1) Lambda||),
    which reduces to 1/2 [1 - N/(2(N-1)) ||rho0 - Lambda||] for equal priors.
    """
    size = rho0.dim
    p_bal = 1.0 - p_const
    lam = diagonal_part(rho0.matrix)
    operator = (p_const + p_bal / (size - 1)) * rho0.matrix - (p_bal * size / (size - 1)) * lam
    return float(min(0.5, max(0.0, 0.5 * (1.0 - trace_norm(operator)))))


def run_dj(rho0: DensityOperator, f: OracleFunction, povm: Povm2) -> OutcomeProbabilities:
    """
    One oracle call on rho0 followed by the two-outcome measurement.

    Returns:
        Born probabilities (Tr[rho_f pi_const], Tr[rho_f pi_bal])
    """
    if classify(f) is FunctionClass.NEITHER:
        raise DomainError(f"Function {f.to_hex()} is neither constant nor balanced")
    if povm.dim != rho0.dim:
        raise ValidationError(f"POVM dimension {povm.dim} does not match state dimension {rho0.dim}")
    rho_f = apply_oracle_density(f, rho0)
    return OutcomeProbabilities(
        p_const=_probability(_real_trace(rho_f.matrix, povm.pi_const)),
        p_bal=_probability(_real_trace(rho_f.matrix, povm.pi_bal)),
    )


def outcome_sweep(
    rho0: DensityOperator,
    povm: Povm2,
    functions: Iterable[OracleFunction],
    tol: Optional[float] = None,
    threads: Optional[int] = None,
) -> List[FunctionOutcome]:
    """run_dj over many functions; `correct` means the right outcome fires with probability 1 within tol."""
    limit = config.tol(tol)

    def evaluate(f: OracleFunction) -> FunctionOutcome:
        function_class = classify(f)
        probabilities = run_dj(rho0, f, povm)
        hit = probabilities.p_const if function_class is FunctionClass.CONSTANT else probabilities.p_bal
        return FunctionOutcome(f, function_class, probabilities, hit >= 1.0 - limit)

    return SweepRunner(threads, label="run-dj").map(evaluate, functions)
