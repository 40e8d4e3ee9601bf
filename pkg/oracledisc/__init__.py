"""
Oracle Discrimination Toolkit

The Deutsch-Jozsa problem treated as minimum-error discrimination between
the constant and balanced oracle channels, with thermal NMR error bounds and
a classical query baseline.
"""

__version__ = "1.0.0"
__license__ = "GPL-3.0"

from .config import config
from .channels import channel_balanced_bruteforce, channel_balanced_closed, channel_constant
from .classical import classical_success_probability, worst_case_queries
from .discriminator import DiscriminationProblem, Povm2, certainty_conditions, helstrom_error, run_dj
from .linalg import DensityOperator, StateVector, dephase, trace_norm
from .oracle import OracleFunction, classify
from .thermal import ThermalConfig, error_lower_bound, min_qubits_for_advantage

__all__ = [
    "config",
    "DensityOperator",
    "StateVector",
    "trace_norm",
    "dephase",
    "OracleFunction",
    "classify",
    "channel_constant",
    "channel_balanced_closed",
    "channel_balanced_bruteforce",
    "DiscriminationProblem",
    "Povm2",
    "helstrom_error",
    "certainty_conditions",
    "run_dj",
    "ThermalConfig",
    "error_lower_bound",
    "min_qubits_for_advantage",
    "worst_case_queries",
    "classical_success_probability",
]
