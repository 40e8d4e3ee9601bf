"""
Class-averaged oracle channels.

The constant class leaves the input untouched. The balanced class is
available in closed form (uniform function probabilities only) and by
explicit enumeration with arbitrary per-function weights.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .config import config
from .constants import BRUTEFORCE_CHUNK, ChannelMethod
from .errors import ValidationError
from .linalg import DensityOperator
from .oracle import balanced_count, balanced_subsets
from .runner import SweepRunner, chunked

logger = logging.getLogger(__name__)

UNIFORM_WEIGHTS = "uniform"
CUSTOM_WEIGHTS = "custom"


@dataclass(frozen=True, eq=False)
class ChannelReport:
    """Output of a class-averaged channel and how it was obtained."""

    output: DensityOperator
    method: ChannelMethod
    functions_used: int
    weights: str


def channel_constant(rho: DensityOperator) -> DensityOperator:
    """Every constant oracle is the identity up to a global phase."""
    return rho


def channel_balanced_closed(rho: DensityOperator) -> DensityOperator:
    """
    Uniform average over balanced oracles: (-rho + N * dephase(rho)) / (N - 1).

    Diagonal entries are copied through exactly and coherences are scaled by
    -1/(N-1). Valid only when every balanced function is equally likely.
    """
    size = rho.dim
    if size < 2:
        raise ValidationError("Balanced functions need at least two arguments")
    out = rho.matrix * (-1.0 / (size - 1))
    np.fill_diagonal(out, np.diag(rho.matrix))
    return DensityOperator(out, tol=rho.tol)


def resolve_weights(n: int, weights: Optional[Sequence[float]], tol: Optional[float] = None) -> Optional[np.ndarray]:
    """
    Validate a probability vector over the balanced functions of n bits.

    Args:
        n: Qubit count
        weights: One probability per balanced function in enumeration order, or None
        tol: Normalization tolerance

    Returns:
        The weights as a float array, or None for the uniform distribution
    """
    if weights is None:
        return None
    w = np.asarray(weights, dtype=np.float64).reshape(-1)
    expected = balanced_count(n)
    if w.size != expected:
        raise ValidationError(f"Expected {expected} balanced-function weights for n={n}, got {w.size}")
    if np.any(w < 0):
        raise ValidationError(f"Weights must be nonnegative, smallest is {float(w.min()):.3e}")
    total = float(w.sum())
    if abs(total - 1.0) > config.tol(tol):
        raise ValidationError(f"Weights sum to {total!r}, expected 1")
    return w


def random_balanced_weights(n: int, rng: np.random.Generator) -> np.ndarray:
    """Non-uniform weights drawn from a flat Dirichlet distribution."""
    return rng.dirichlet(np.ones(balanced_count(n)))


def _sign_rows(chunk: Sequence[Tuple[int, ...]], size: int) -> np.ndarray:
    """One +/-1 row per balanced function: the diagonal of U_f."""
    rows = np.ones((len(chunk), size))
    rows[np.arange(len(chunk))[:, None], np.asarray(chunk)] = -1.0
    return rows


def sign_kernel(
    n: int,
    weights: Optional[Sequence[float]] = None,
    cap: Optional[int] = None,
    threads: Optional[int] = None,
) -> np.ndarray:
    """
    K_xy = sum_f p_f (-1)^(f(x)+f(y)) over all balanced f.

    The enumeration is cut into chunks that are accumulated in parallel and
    combined in order with Kahan compensation. With uniform weights the
    chunks hold exact integer counts and the division by B happens once.
    """
    subsets = balanced_subsets(n, cap)
    w = resolve_weights(n, weights)
    size = 1 << n
    total_functions = balanced_count(n)

    work = []
    offset = 0
    for chunk in chunked(subsets, BRUTEFORCE_CHUNK):
        work.append((offset, chunk))
        offset += len(chunk)

    def partial(item):
        start, chunk = item
        rows = _sign_rows(chunk, size)
        if w is None:
            return rows.T @ rows
        return rows.T @ (w[start:start + len(chunk), None] * rows)

    partials = SweepRunner(threads, label="sign-kernel").map(partial, work)

    total = np.zeros((size, size))
    compensation = np.zeros((size, size))
    for part in partials:
        y = part - compensation
        t = total + y
        compensation = (t - total) - y
        total = t

    logger.debug("Sign kernel for n=%d accumulated over %d functions in %d chunks", n, total_functions, len(work))
    if w is None:
        total = total / total_functions
    return total


def channel_balanced_bruteforce(
    rho: DensityOperator,
    weights: Optional[Sequence[float]] = None,
    cap: Optional[int] = None,
    threads: Optional[int] = None,
) -> ChannelReport:
    """
    sum_f p_f U_f rho U_f^dagger by explicit enumeration of balanced oracles.

    Each conjugation is the sign mask s_f s_f^T applied entrywise, so the sum
    collapses to the averaged sign kernel times rho.
    """
    n = rho.n_qubits
    if n is None or n < 1:
        raise ValidationError(f"Dimension {rho.dim} is not 2^n with n >= 1")
    kernel = sign_kernel(n, weights, cap=cap, threads=threads)
    output = DensityOperator(kernel * rho.matrix, tol=rho.tol)
    return ChannelReport(
        output=output,
        method=ChannelMethod.BRUTE_FORCE,
        functions_used=balanced_count(n),
        weights=UNIFORM_WEIGHTS if weights is None else CUSTOM_WEIGHTS,
    )


def balanced_output(rho: DensityOperator, weights: Optional[Sequence[float]] = None) -> ChannelReport:
    """Closed form for uniform weights, enumeration otherwise."""
    if weights is None:
        return ChannelReport(
            output=channel_balanced_closed(rho),
            method=ChannelMethod.CLOSED,
            functions_used=balanced_count(rho.n_qubits) if rho.n_qubits else 0,
            weights=UNIFORM_WEIGHTS,
        )
    return channel_balanced_bruteforce(rho, weights)


def max_channel_deviation(rho: DensityOperator, threads: Optional[int] = None) -> float:
    """Largest entrywise gap between the enumerated and closed-form balanced channels."""
    brute = channel_balanced_bruteforce(rho, threads=threads).output.matrix
    closed = channel_balanced_closed(rho).matrix
    return float(np.max(np.abs(brute - closed)))
