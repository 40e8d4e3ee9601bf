"""
Classical baseline for the Deutsch-Jozsa promise problem.

A deterministic classical strategy queries k distinct arguments, answers
Balanced on any mismatch and Constant otherwise. Classes are equally likely
and functions are uniform within each class.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from math import comb
from typing import Iterator, List, Optional, Tuple

from .constants import CLASSICAL_TABLE_CAP
from .errors import CapacityError, ValidationError
from .oracle import balanced_subsets

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassicalReport:
    n: int
    worst_case_queries: int
    success_by_k: Tuple[Tuple[int, float], ...]


def worst_case_queries(n: int) -> int:
    """N/2 + 1 queries settle every promise instance."""
    if n < 1:
        raise ValidationError(f"Qubit count must be at least 1, got {n}")
    return (1 << (n - 1)) + 1


def _check_k(n: int, k: int) -> int:
    if n < 1:
        raise ValidationError(f"Qubit count must be at least 1, got {n}")
    size = 1 << n
    if not 1 <= k <= size:
        raise ValidationError(f"k must lie in [1, {size}] for n={n}, got {k}")
    return size


def exact_success_probability(n: int, k: int) -> Fraction:
    """1/2 + 1/2 (1 - P_allequal) with P_allequal = 2 C(N-k, N/2-k) / C(N, N/2)."""
    size = _check_k(n, k)
    half = size // 2
    if k > half:
        all_equal = Fraction(0)
    else:
        all_equal = Fraction(2 * comb(size - k, half - k), comb(size, half))
    return Fraction(1, 2) + Fraction(1, 2) * (1 - all_equal)


def _all_equal_running(size: int) -> Iterator[float]:
    """P_allequal for k = 1, 2, ... as the doubled product of (N/2 - i)/(N - i), i < k."""
    half = size // 2
    product = 2.0
    for i in range(size):
        product = product * (half - i) / (size - i) if i < half else 0.0
        yield product


def classical_success_probability(n: int, k: int) -> float:
    size = _check_k(n, k)
    if k > size // 2:
        return 1.0
    all_equal = 2.0
    for all_equal in islice(_all_equal_running(size), k):
        # later terms are smaller still, so the result is already 1.0
        if 1.0 - all_equal == 1.0:
            break
    return 0.5 + 0.5 * (1.0 - all_equal)


def enumerated_success_probability(n: int, k: int, cap: Optional[int] = None) -> Fraction:
    """
    Success probability by walking every balanced function.

    Queries are the first k arguments. Constant functions never produce a
    mismatch, so they are always answered correctly.
    """
    _check_k(n, k)
    queried = range(k)
    total = 0
    detected = 0
    for ones in balanced_subsets(n, cap):
        marked = set(ones)
        values = {x in marked for x in queried}
        total += 1
        if len(values) > 1:
            detected += 1
    return Fraction(1, 2) + Fraction(1, 2) * Fraction(detected, total)


def classical_report(n: int, max_k: Optional[int] = None) -> ClassicalReport:
    """
    Success probability for k = 1 .. max_k (default N/2 + 1).

    Args:
        n: Qubit count, at most CLASSICAL_TABLE_CAP
        max_k: Last query count to tabulate

    Returns:
        The report, with probabilities nondecreasing in k
    """
    if n > CLASSICAL_TABLE_CAP:
        raise CapacityError(f"n={n} exceeds the classical table cap of {CLASSICAL_TABLE_CAP}")
    worst = worst_case_queries(n)
    last = worst if max_k is None else max_k
    _check_k(n, last)
    all_equal = islice(_all_equal_running(1 << n), last)
    rows: List[Tuple[int, float]] = [(k, 0.5 + 0.5 * (1.0 - p)) for k, p in enumerate(all_equal, start=1)]
    logger.debug("Classical table for n=%d covers k=1..%d", n, last)
    return ClassicalReport(n=n, worst_case_queries=worst, success_by_k=tuple(rows))
