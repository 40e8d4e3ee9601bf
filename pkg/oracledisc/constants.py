"""
Constants and enums for the oracle discrimination toolkit.
"""

import math
from enum import Enum


class FunctionClass(Enum):
    """Deutsch-Jozsa promise classes."""
    CONSTANT = "Constant"
    BALANCED = "Balanced"
    NEITHER = "Neither"


class ChannelMethod(Enum):
    """How a class-averaged channel output was produced."""
    CLOSED = "Closed"
    BRUTE_FORCE = "BruteForce"


class ThermalMode(Enum):
    """Thermal state construction."""
    LINEARIZED = "linearized"
    EXACT = "exact"


class OutputFormat(Enum):
    """Report output formats."""
    JSON = "json"
    CSV = "csv"
    MARKDOWN = "md"


class PovmChoice(Enum):
    """Measurement used by the run command."""
    HELSTROM = "helstrom"
    PROJECTOR = "projector"


# Default configuration values
DEFAULT_TOLERANCE = 1e-9
DEFAULT_RANK_TOLERANCE = 1e-9
DEFAULT_ENUMERATION_CAP = 4
DEFAULT_DISCRIMINATION_CAP = 4
DEFAULT_LOG_LEVEL = "WARNING"

# Hard limits
EXPLICIT_QUBIT_CAP = 16        # dense diagonal deviation / thermal matrices
SIGN_PATTERN_CAP = 20          # exact deviation trace norm
RUN_ALL_CAP = 3                # `run --all`
CLASSICAL_TABLE_CAP = 16       # success_by_k list in the classical report
BRUTEFORCE_CHUNK = 1024        # balanced functions per accumulation chunk

# Majority-vote advantage threshold on epsilon
ADVANTAGE_THRESHOLD = math.sqrt(3.0 / 4.0)

# Report schema
SCHEMA_VERSION = "1"

# Exit codes
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NOT_PROMISE = 3

# CSV column schemas
SWEEP_COLUMNS = ("n", "epsilon", "p_error_lower", "advantage")
CLASSICAL_COLUMNS = ("k", "success_probability")
RUN_COLUMNS = ("table", "class", "p_const", "p_bal", "correct")
