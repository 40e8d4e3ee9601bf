"""
Boolean oracle functions for the Deutsch-Jozsa promise problem.
Classification, enumeration of the constant and balanced classes and the
phase-oracle action |x> -> (-1)^f(x) |x>.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .config import config
from .constants import FunctionClass
from .errors import CapacityError, ValidationError
from .linalg import DensityOperator, StateVector

logger = logging.getLogger(__name__)

TableOneKey = Tuple[int, int]
TABLE_ONE_KEYS: Tuple[TableOneKey, ...] = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class OracleFunction:
    """Truth table of f: {0,1}^n -> {0,1}; table[x] = f(x)."""

    n: int
    table: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"Qubit count must be at least 1, got {self.n}")
        table = tuple(int(b) for b in self.table)
        if len(table) != 1 << self.n:
            raise ValidationError(f"Truth table for n={self.n} needs {1 << self.n} entries, got {len(table)}")
        if any(b not in (0, 1) for b in table):
            raise ValidationError("Truth table entries must be 0 or 1")
        object.__setattr__(self, "table", table)

    @property
    def dim(self) -> int:
        return len(self.table)

    @property
    def signs(self) -> np.ndarray:
        """The diagonal of U_f as a +/-1 mask."""
        return 1.0 - 2.0 * np.asarray(self.table, dtype=np.float64)

    @property
    def ones(self) -> Tuple[int, ...]:
        return tuple(x for x, b in enumerate(self.table) if b)

    @classmethod
    def from_ones(cls, n: int, ones: Sequence[int]) -> "OracleFunction":
        """Function returning 1 exactly on `ones`."""
        table = [0] * (1 << n)
        for x in ones:
            table[x] = 1
        return cls(n, tuple(table))

    @classmethod
    def from_hex(cls, text: str, n: int) -> "OracleFunction":
        """
        Parse a hex-packed truth table, least significant bit = f(0).

        Args:
            text: Hex digits, optional 0x prefix
            n: Qubit count

        Returns:
            The decoded function
        """
        digits = text.strip().lower()
        if digits.startswith("0x"):
            digits = digits[2:]
        try:
            value = int(digits, 16)
        except ValueError:
            raise ValidationError(f"Not a hex truth table: {text!r}")
        size = 1 << n
        if value >> size:
            raise ValidationError(f"Hex table {text!r} has bits beyond the {size} arguments of n={n}")
        return cls(n, tuple((value >> x) & 1 for x in range(size)))

    def to_hex(self) -> str:
        value = sum(b << x for x, b in enumerate(self.table))
        width = max(1, (self.dim + 3) // 4)
        return format(value, f"0{width}x")


def classify(f: OracleFunction) -> FunctionClass:
    """Constant, Balanced, or Neither."""
    ones = sum(f.table)
    if ones == 0 or ones == f.dim:
        return FunctionClass.CONSTANT
    if 2 * ones == f.dim:
        return FunctionClass.BALANCED
    return FunctionClass.NEITHER


def balanced_count(n: int) -> int:
    """B = C(N, N/2)."""
    size = 1 << n
    return comb(size, size // 2)


def _check_enumerable(n: int, cap: Optional[int]) -> int:
    limit = config.cap(cap)
    if n < 1:
        raise ValidationError(f"Qubit count must be at least 1, got {n}")
    if n > limit:
        raise CapacityError(
            f"n={n} exceeds the enumeration cap {limit}: it would enumerate B={balanced_count(n)} balanced functions"
        )
    return limit


def balanced_subsets(n: int, cap: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """
    Sets of arguments mapped to 1, in lexicographic order.

    Raises CapacityError immediately when n is above the cap.
    """
    _check_enumerable(n, cap)
    size = 1 << n
    logger.debug("Enumerating %d balanced functions for n=%d", balanced_count(n), n)
    return combinations(range(size), size // 2)


def enumerate_balanced(n: int, cap: Optional[int] = None) -> Iterator[OracleFunction]:
    """Stream every balanced function of n bits, one at a time."""
    subsets = balanced_subsets(n, cap)
    return (OracleFunction.from_ones(n, ones) for ones in subsets)


def enumerate_constant(n: int) -> List[OracleFunction]:
    """All-zeros then all-ones."""
    size = 1 << n
    return [OracleFunction(n, (0,) * size), OracleFunction(n, (1,) * size)]


def _check_dim(f: OracleFunction, dim: int):
    if dim != f.dim:
        raise ValidationError(f"Oracle acts on dimension {f.dim}, state has dimension {dim}")


def apply_oracle(f: OracleFunction, state: StateVector) -> StateVector:
    """amplitude_x -> (-1)^f(x) amplitude_x."""
    _check_dim(f, state.dim)
    return StateVector(f.signs * state.amplitudes, tol=state.tol)


def apply_oracle_density(f: OracleFunction, rho: DensityOperator) -> DensityOperator:
    """rho_xy -> (-1)^(f(x)+f(y)) rho_xy, applied as a sign mask."""
    _check_dim(f, rho.dim)
    s = f.signs
    return DensityOperator(s[:, None] * rho.matrix * s[None, :], tol=rho.tol)


def _check_pair(n: int, x: int, y: int):
    size = 1 << n
    for name, value in (("x", x), ("y", y)):
        if not 0 <= value < size:
            raise ValidationError(f"{name}={value} is outside [0, {size}) for n={n}")


def balanced_pair_sum(n: int, x: int, y: int, cap: Optional[int] = None) -> int:
    """Sum over all balanced f of (-1)^(f(x)+f(y)), by enumeration."""
    _check_pair(n, x, y)
    total = 0
    for ones in balanced_subsets(n, cap):
        total += -1 if (x in ones) != (y in ones) else 1
    return total


def pair_sum_formula(n: int, x: int, y: int) -> int:
    """Closed form of balanced_pair_sum: B on the diagonal, -B/(N-1) off it."""
    _check_pair(n, x, y)
    if x == y:
        return balanced_count(n)
    size = 1 << n
    half = size // 2
    return 2 * (comb(size - 2, half) - comb(size - 2, half - 1))


def table_one_counts(n: int, x: int = 0, y: int = 1, cap: Optional[int] = None) -> Dict[TableOneKey, int]:
    """How many balanced functions realize each (f(x), f(y)) pair."""
    _check_pair(n, x, y)
    if x == y:
        raise ValidationError("Instance counts need two distinct arguments")
    counts: Counter = Counter()
    for ones in balanced_subsets(n, cap):
        counts[(int(x in ones), int(y in ones))] += 1
    return {key: counts.get(key, 0) for key in TABLE_ONE_KEYS}


def table_one_formula(n: int) -> Dict[TableOneKey, int]:
    """Binomial instance counts: C(N-2, N/2) for equal values, C(N-2, N/2-1) otherwise."""
    size = 1 << n
    same = comb(size - 2, size // 2)
    differ = comb(size - 2, size // 2 - 1)
    return {(0, 0): same, (0, 1): differ, (1, 0): differ, (1, 1): same}
