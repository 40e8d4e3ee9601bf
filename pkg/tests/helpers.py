"""
State and measurement generators shared by the test modules.
"""

import numpy as np

from oracledisc.discriminator import optimal_state
from oracledisc.linalg import DensityOperator, random_unitary


def random_phase_density(n: int, rng: np.random.Generator) -> DensityOperator:
    """Projector onto a uniform-magnitude state with random phases."""
    return optimal_state(n, rng.uniform(0.0, 2.0 * np.pi, 1 << n)).projector()


def random_povm_const(dim: int, rng: np.random.Generator) -> np.ndarray:
    """A random 0 <= pi_const <= I built from a Haar basis."""
    u = random_unitary(dim, rng)
    element = u @ np.diag(rng.uniform(0.0, 1.0, dim)) @ u.conj().T
    return (element + element.conj().T) / 2.0
