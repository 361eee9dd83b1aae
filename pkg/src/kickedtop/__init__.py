"""Quantum kicked top as a symmetric multiqubit system.

Simulates stroboscopic Floquet dynamics of N qubits with collective
spin-j = N/2 degrees of freedom, tracks bipartite (linear entropy) and
pairwise (concurrence) entanglement of a qubit pair, and provides the
classical limit of the map on the sphere with Lyapunov diagnostics.
"""

from . import classical, entanglement, experiments, spin_core
from .errors import ConfigError, InvariantViolation

__version__ = "0.1.0"

__all__ = [
    "classical",
    "entanglement",
    "experiments",
    "spin_core",
    "ConfigError",
    "InvariantViolation",
    "__version__",
]
