"""
Thermal-equilibrium initial states of the kind met in solution-state NMR.

High-temperature deviation operator, exact and linearized thermal states,
the trace-norm chain that bounds the discrimination error from below, the
epsilon advantage test and the minimum qubit count it implies.
"""

import logging
import math
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import yaml

from .config import config
from .constants import ADVANTAGE_THRESHOLD, EXPLICIT_QUBIT_CAP, SIGN_PATTERN_CAP, ThermalMode
from .discriminator import DiscriminationProblem, helstrom_error
from .errors import CapacityError, NotAStateError, ValidationError
from .linalg import ComplexMatrix, DensityOperator, as_matrix, diagonal_part, max_abs, trace_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThermalConfig:
    """Per-qubit polarizations alpha_i = hbar omega_i / 2kT, plus couplings that are recorded only."""

    n: int
    alphas: Tuple[float, ...]
    couplings: Optional[Tuple[Tuple[float, ...], ...]] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"Qubit count must be at least 1, got {self.n}")
        alphas = tuple(float(a) for a in self.alphas)
        if len(alphas) != self.n:
            raise ValidationError(f"Expected {self.n} polarizations, got {len(alphas)}")
        if any(not math.isfinite(a) or a < 0 for a in alphas):
            raise ValidationError(f"Polarizations must be finite and nonnegative, got {alphas}")
        object.__setattr__(self, "alphas", alphas)

        if self.couplings is not None:
            rows = tuple(tuple(float(j) for j in row) for row in self.couplings)
            if len(rows) != self.n or any(len(row) != self.n for row in rows):
                raise ValidationError(f"Couplings must be a {self.n}x{self.n} matrix")
            object.__setattr__(self, "couplings", rows)

    @classmethod
    def uniform(cls, n: int, alpha1: float) -> "ThermalConfig":
        return cls(n, (alpha1,) * n)

    @classmethod
    def from_yaml(cls, path: Path) -> "ThermalConfig":
        """
        Load a configuration file.

        Args:
            path: YAML file with `alphas` (list) and optional `couplings` (matrix, Hz)

        Returns:
            The parsed configuration
        """
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
        if "alphas" not in data:
            raise ValidationError(f"{path} has no 'alphas' entry")
        alphas = data["alphas"]
        return cls(n=int(data.get("n", len(alphas))), alphas=tuple(alphas), couplings=data.get("couplings"))

    @property
    def sorted_alphas(self) -> Tuple[float, ...]:
        return tuple(sorted(self.alphas, reverse=True))

    @property
    def alpha1(self) -> float:
        return max(self.alphas)

    @property
    def has_couplings(self) -> bool:
        return self.couplings is not None


class DeviationNorm(NamedTuple):
    exact: Optional[float]
    bound: float


class DeviationChain(NamedTuple):
    """Trace norms of rho'_dev, its dephased part Lambda'_dev, and their difference."""
    rho_dev: float
    lambda_dev: float
    difference: float


class SweepRow(NamedTuple):
    n: int
    epsilon: float
    p_error_lower: float
    advantage: bool


@dataclass(frozen=True)
class ThermalBoundReport:
    """Lower bounds on the single-shot error for a thermal initial state."""

    n: int
    alpha1: float
    dev_trace_norm_exact: Optional[float]
    dev_trace_norm_bound: float
    epsilon: float
    p_error_lower: float
    p_error_lower_exact: Optional[float]
    advantage: bool
    n_required: Optional[int]
    couplings_ignored: bool

    def __post_init__(self):
        exact = self.dev_trace_norm_exact
        if exact is not None and exact > self.dev_trace_norm_bound + config.tol():
            raise ValidationError(
                f"Exact deviation norm {exact!r} exceeds its bound {self.dev_trace_norm_bound!r}"
            )


def size_ratio(n: int) -> float:
    """N / (N - 1) for N = 2^n, without forming N."""
    return 1.0 / (1.0 - math.ldexp(1.0, -n))


def epsilon(n: int, alpha1: float) -> float:
    """N n alpha_1 / (N - 1)."""
    return size_ratio(n) * n * alpha1


def _clamp_error(value: float) -> float:
    return min(0.5, max(0.0, value))


def _check_explicit(n: int):
    if n > EXPLICIT_QUBIT_CAP:
        raise CapacityError(f"n={n} exceeds the explicit-matrix cap of {EXPLICIT_QUBIT_CAP} qubits")


def deviation_diagonal(alphas: Sequence[float]) -> np.ndarray:
    """Diagonal of sum_i alpha_i sigma_z^(i) / N; qubit 1 is the most significant bit."""
    diag = np.zeros(1)
    for a in alphas:
        diag = (diag[:, None] + np.array([a, -a])[None, :]).reshape(-1)
    return diag / diag.size


def deviation_operator(cfg: ThermalConfig) -> ComplexMatrix:
    """rho_dev as a dense diagonal matrix; traceless."""
    _check_explicit(cfg.n)
    return as_matrix(np.diag(deviation_diagonal(cfg.alphas)))


def _check_unitary(v: ComplexMatrix, dim: int):
    if v.shape != (dim, dim):
        raise ValidationError(f"Preparation unitary must be {dim}x{dim}, got {v.shape}")
    gap = max_abs(v @ v.conj().T - np.eye(dim))
    if gap > config.tol():
        raise ValidationError(f"Preparation is not unitary: max |V V^dagger - I| = {gap:.3e}")


def _conjugate(diag: np.ndarray, preparation: Optional[ComplexMatrix]) -> np.ndarray:
    m = np.diag(diag).astype(np.complex128)
    if preparation is None:
        return m
    v = as_matrix(preparation)
    _check_unitary(v, diag.size)
    out = v @ m @ v.conj().T
    return (out + out.conj().T) / 2.0


def thermal_state(
    cfg: ThermalConfig,
    mode: ThermalMode = ThermalMode.LINEARIZED,
    preparation: Optional[ComplexMatrix] = None,
) -> DensityOperator:
    """
    Thermal equilibrium state, optionally followed by a preparatory unitary V.

    Linearized: I/N - rho_dev, a state only while n alpha_1 < 1.
    Exact: the product of exp(-alpha_i sigma_z) / (2 cosh alpha_i) over qubits.
    Couplings never enter either form.
    """
    _check_explicit(cfg.n)
    if cfg.has_couplings:
        logger.debug("Ignoring %dx%d coupling matrix in the thermal state", cfg.n, cfg.n)

    if mode is ThermalMode.LINEARIZED:
        if cfg.n * cfg.alpha1 >= 1.0:
            raise NotAStateError(
                f"Linearized thermal state needs n*alpha1 < 1, got {cfg.n * cfg.alpha1!r}"
            )
        dev = deviation_diagonal(cfg.alphas)
        diag = 1.0 / dev.size - dev
    else:
        factors = [np.array([math.exp(-a), math.exp(a)]) / (2.0 * math.cosh(a)) for a in cfg.alphas]
        diag = reduce(np.kron, factors)

    return DensityOperator(_conjugate(diag, preparation))


def deviation_trace_norm(cfg: ThermalConfig) -> DeviationNorm:
    """
    ||rho_dev|| from all 2^n sign patterns, with the bound n alpha_1.

    Above the sign-pattern cap only the bound is returned.
    """
    bound = cfg.n * cfg.alpha1
    if cfg.n > SIGN_PATTERN_CAP:
        logger.warning(
            "n=%d exceeds the sign-pattern cap of %d; reporting only the bound", cfg.n, SIGN_PATTERN_CAP
        )
        return DeviationNorm(exact=None, bound=bound)
    exact = float(np.sum(np.abs(deviation_diagonal(cfg.alphas))))
    return DeviationNorm(exact=exact, bound=bound)


def deviation_chain(cfg: ThermalConfig, preparation: Optional[ComplexMatrix] = None) -> DeviationChain:
    """Norms of rho'_dev = V rho_dev V^dagger and of its dephased part."""
    _check_explicit(cfg.n)
    rho_dev = _conjugate(deviation_diagonal(cfg.alphas), preparation)
    lambda_dev = diagonal_part(rho_dev)
    return DeviationChain(
        rho_dev=trace_norm(rho_dev),
        lambda_dev=trace_norm(lambda_dev),
        difference=trace_norm(rho_dev - lambda_dev),
    )


def exact_thermal_error(
    cfg: ThermalConfig,
    preparation: Optional[ComplexMatrix] = None,
    mode: ThermalMode = ThermalMode.LINEARIZED,
) -> float:
    """Helstrom error of the channel pair for a thermal initial state, equal priors."""
    rho0 = thermal_state(cfg, mode, preparation)
    return helstrom_error(DiscriminationProblem.from_initial_state(rho0))


def min_qubits_for_advantage(alpha1: float) -> int:
    """
    Smallest n with n > sqrt(3/4) (N - 1)/N / alpha_1.

    n - K (1 - 2^-n) falls and then rises, so when n = 1 fails the answer is
    the crossing on the rising branch, found by stepping down from floor(K) + 1.
    """
    if not 0.0 < alpha1 < 1.0:
        raise ValidationError(f"alpha1 must lie in (0, 1), got {alpha1!r}")
    k = ADVANTAGE_THRESHOLD / alpha1

    def exceeds(n: int) -> bool:
        return n > k * (1.0 - math.ldexp(1.0, -n))

    if exceeds(1):
        return 1
    n = math.floor(k) + 1
    while n > 1 and exceeds(n - 1):
        n -= 1
    return n


def error_lower_bound(cfg: ThermalConfig) -> ThermalBoundReport:
    """
    Equal-prior lower bounds on the error for any preparatory unitary.

    p_error >= (1 - epsilon) / 2 with epsilon = N n alpha_1 / (N - 1), and the
    sharper 1/2 (1 - N/(N-1) ||rho_dev||) when the exact norm is available.
    """
    norm = deviation_trace_norm(cfg)
    eps = epsilon(cfg.n, cfg.alpha1)
    sharper = None
    if norm.exact is not None:
        sharper = _clamp_error(0.5 * (1.0 - size_ratio(cfg.n) * norm.exact))
    n_required = min_qubits_for_advantage(cfg.alpha1) if 0.0 < cfg.alpha1 < 1.0 else None

    return ThermalBoundReport(
        n=cfg.n,
        alpha1=cfg.alpha1,
        dev_trace_norm_exact=norm.exact,
        dev_trace_norm_bound=norm.bound,
        epsilon=eps,
        p_error_lower=_clamp_error(0.5 * (1.0 - eps)),
        p_error_lower_exact=sharper,
        advantage=eps > ADVANTAGE_THRESHOLD,
        n_required=n_required,
        couplings_ignored=cfg.has_couplings,
    )


def advantage_sweep(alpha1: float, start: int, stop: int, step: int = 1) -> List[SweepRow]:
    """Rows (n, epsilon, p_error_lower, advantage) for n = start, start+step, ... <= stop."""
    if alpha1 <= 0:
        raise ValidationError(f"alpha1 must be positive, got {alpha1!r}")
    rows = []
    for n in range(start, stop + 1, step):
        eps = epsilon(n, alpha1)
        rows.append(SweepRow(n, eps, _clamp_error(0.5 * (1.0 - eps)), eps > ADVANTAGE_THRESHOLD))
    return rows
