"""
Thread-pool execution of independent sweep items.
Used to partition balanced-function enumerations and per-function runs.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from itertools import islice
from typing import Callable, Iterable, Iterator, List, Optional, TypeVar

from .config import config
from .utils import format_duration

T = TypeVar("T")
R = TypeVar("R")


def chunked(items: Iterable[T], size: int) -> Iterator[List[T]]:
    """Split a stream into consecutive lists of at most `size` items."""
    iterator = iter(items)
    while True:
        chunk = list(islice(iterator, size))
        if not chunk:
            return
        yield chunk


class SweepRunner:
    """Runs a function over work items on a bounded thread pool.

    Results come back in input order regardless of completion order, so
    anything assembled from them is deterministic.
    """

    def __init__(self, threads: Optional[int] = None, label: str = "sweep"):
        self.threads = config.threads(threads)
        self.label = label
        self.logger = logging.getLogger(f"{__name__}.{label}")

    def map(self, func: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """
        Apply `func` to every item.

        Args:
            func: Pure function of one work item
            items: Work items (materialized before submission)

        Returns:
            Results in the order of `items`
        """
        work = list(items)
        start = time.perf_counter()

        if self.threads == 1 or len(work) <= 1:
            results = [func(item) for item in work]
        else:
            workers = min(self.threads, len(work))
            self.logger.debug("Starting %s: %d items on %d threads", self.label, len(work), workers)
            with ThreadPoolExecutor(max_workers=workers) as executor:
                futures = [executor.submit(func, item) for item in work]
                results = [future.result() for future in futures]

        self.logger.debug(
            "Completed %s: %d items in %s", self.label, len(work), format_duration(time.perf_counter() - start)
        )
        return results
