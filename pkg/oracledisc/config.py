"""
Configuration management for the oracle discrimination toolkit.
Handles environment variables and global numerical settings.
"""

import os
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv

from .constants import (
    DEFAULT_TOLERANCE,
    DEFAULT_RANK_TOLERANCE,
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_DISCRIMINATION_CAP,
    DEFAULT_LOG_LEVEL,
    EXPLICIT_QUBIT_CAP,
)


class Config:
    """Global configuration manager."""

    def __init__(self):
        # Load environment variables
        load_dotenv()

        # Parallelism
        self.THREADS = int(os.getenv("ORACLE_DISC_THREADS", os.cpu_count() or 1))

        # Numerics
        self.TOLERANCE = float(os.getenv("ORACLE_DISC_TOL", DEFAULT_TOLERANCE))
        self.RANK_TOLERANCE = float(os.getenv("ORACLE_DISC_RANK_TOL", DEFAULT_RANK_TOLERANCE))
        self.ENUMERATION_CAP = int(os.getenv("ORACLE_DISC_ENUM_CAP", DEFAULT_ENUMERATION_CAP))
        self.DISCRIMINATION_CAP = int(os.getenv("ORACLE_DISC_DISCRIM_CAP", DEFAULT_DISCRIMINATION_CAP))

        # Logging configuration
        self.LOG_LEVEL = os.getenv("ORACLE_DISC_LOG_LEVEL", DEFAULT_LOG_LEVEL)
        log_file = os.getenv("ORACLE_DISC_LOG_FILE")
        self.LOG_FILE: Optional[Path] = Path(log_file) if log_file else None

        self._validate()

    def _validate(self):
        """Validate configuration values."""
        if self.THREADS < 1:
            raise ValueError(f"ORACLE_DISC_THREADS must be positive, got {self.THREADS}")
        if self.TOLERANCE <= 0 or self.RANK_TOLERANCE <= 0:
            raise ValueError("Tolerances must be positive")
        if self.ENUMERATION_CAP < 1:
            raise ValueError(f"ORACLE_DISC_ENUM_CAP must be at least 1, got {self.ENUMERATION_CAP}")
        if not 1 <= self.DISCRIMINATION_CAP <= EXPLICIT_QUBIT_CAP:
            raise ValueError(
                f"ORACLE_DISC_DISCRIM_CAP must lie in [1, {EXPLICIT_QUBIT_CAP}], got {self.DISCRIMINATION_CAP}"
            )

    def tol(self, override: Optional[float] = None) -> float:
        """Resolve a per-call tolerance against the global default."""
        return self.TOLERANCE if override is None else float(override)

    def cap(self, override: Optional[int] = None) -> int:
        """Resolve a per-call enumeration cap against the global default."""
        return self.ENUMERATION_CAP if override is None else int(override)

    def threads(self, override: Optional[int] = None) -> int:
        """Resolve a per-call worker count against the global default."""
        return self.THREADS if override is None else max(1, int(override))


# Global configuration instance
config = Config()
