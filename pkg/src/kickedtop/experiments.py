"""Entanglement-dynamics experiments on the kicked top.

Covers per-kick time series of linear entropy E and concurrence C for a
spin-coherent initial state, time averages over a kick window, scans of
the time averages over the initial-state sphere, and the sphere-averaged
entangling power as a function of the twist strength kappa alongside the
classical global Lyapunov exponent.

Time averages are discrete means over kicks n = 1..T; kick 0 is excluded
because every spin-coherent state starts with E = C = 0 identically (the
dynamics only exists at integer kicks, so the continuum averages are read
as stroboscopic sums). Sphere averages use a deterministic product grid,
uniform in cos(theta) and in phi with equal weights, rather than Monte
Carlo, so repeated runs are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import classical
from ._parallel import pmap
from .entanglement import concurrence, linear_entropy, pair_density
from .spin_core import (
    DEFAULT_KICK_ANGLE,
    SpinSystem,
    collective_operators,
    evolution_series,
    floquet_operator,
    moment_arrays,
    spin_coherent_state,
)

POLE_CLAMP = 1e-6
DEFAULT_QUADRATURE = (32, 64)
REVIVAL_WINDOW = 20
REVIVAL_FACTOR = 5.0


@dataclass(frozen=True)
class TimeSeries:
    """Per-kick entanglement of one initial state: E(n) and C(n), n = 0..n_max."""

    n: np.ndarray
    E: np.ndarray
    C: np.ndarray


@dataclass(frozen=True)
class ScanResult:
    """Time-averaged E_T, C_T on a (theta, phi) grid of initial states."""

    theta: np.ndarray
    phi: np.ndarray
    E_T: np.ndarray
    C_T: np.ndarray


@dataclass(frozen=True)
class PowerCurve:
    """Entangling power e_T, c_T and global Lyapunov exponent per kappa."""

    kappa: np.ndarray
    e_T: np.ndarray
    c_T: np.ndarray
    lam: np.ndarray
    drift: float


@dataclass(frozen=True)
class LyapunovConfig:
    """Sampling parameters for the global Lyapunov exponent."""

    samples: int = 100
    kicks: int = 10_000
    transient: int = 100
    seed: int = 0


def time_series(N, kappa, theta, phi, n_max, p=DEFAULT_KICK_ANGLE) -> TimeSeries:
    """Entanglement dynamics of the spin-coherent state centered at (theta, phi)."""
    if N < 2:
        raise ValueError(f"pairwise entanglement needs N >= 2 qubits, got N={N}")
    system = SpinSystem(N)
    floquet = floquet_operator(system, kappa, p)
    E, C = _entanglement_series(floquet, theta, phi, n_max)
    return TimeSeries(n=np.arange(n_max + 1), E=E, C=C)


def time_averaged(N, kappa, theta, phi, T, p=DEFAULT_KICK_ANGLE):
    """Mean (E, C) over kicks 1..T for one spin-coherent initial state."""
    series = time_series(N, kappa, theta, phi, T, p)
    return float(series.E[1:].mean()), float(series.C[1:].mean())


def phase_space_scan(N, kappa, grid_theta, grid_phi, T, p=DEFAULT_KICK_ANGLE, workers=1) -> ScanResult:
    """Time-averaged entanglement over a grid of initial-state centers.

    ``grid_theta`` / ``grid_phi`` may be node counts or explicit node
    arrays. Count-specified grids span theta in [0, pi] (clamped away from
    the poles, where phi is degenerate) and phi in [-pi, pi). Cells are
    independent; with workers > 1 they are evaluated across processes with
    results slotted by index, so values do not depend on the worker count.
    """
    if N < 2:
        raise ValueError(f"pairwise entanglement needs N >= 2 qubits, got N={N}")
    theta = _theta_nodes(grid_theta)
    phi = _phi_nodes(grid_phi)
    cells = [(float(t), float(f)) for t in theta for f in phi]
    chunks = _chunk(cells, workers)
    results = pmap(_scan_chunk, [(N, kappa, p, T, chunk) for chunk in chunks], workers)
    E = np.concatenate([r[0] for r in results]).reshape(len(theta), len(phi))
    C = np.concatenate([r[1] for r in results]).reshape(len(theta), len(phi))
    return ScanResult(theta=theta, phi=phi, E_T=E, C_T=C)


def sphere_quadrature(n_theta, n_phi):
    """Equal-weight product nodes for averaging over the sphere.

    Midpoint nodes, uniform in cos(theta) over [-1, 1] and in phi over
    [-pi, pi); with equal weights this integrates the uniform (Haar)
    measure on the sphere, and no node sits on a pole.
    """
    if n_theta < 2 or n_phi < 2:
        raise ValueError("quadrature needs at least 2 nodes per axis")
    u = -1.0 + (np.arange(n_theta) + 0.5) * (2.0 / n_theta)
    theta = np.arccos(u)
    phi = -np.pi + (np.arange(n_phi) + 0.5) * (2.0 * np.pi / n_phi)
    return theta, phi


def entangling_power(N, kappa, T, n_theta=DEFAULT_QUADRATURE[0], n_phi=DEFAULT_QUADRATURE[1],
                     p=DEFAULT_KICK_ANGLE, workers=1):
    """Sphere-averaged time-averaged entanglement (e_T, c_T) of the kick map.

    Equals the equal-weight mean of the phase_space_scan values on the
    sphere_quadrature nodes, exactly.
    """
    theta, phi = sphere_quadrature(n_theta, n_phi)
    scan = phase_space_scan(N, kappa, theta, phi, T, p, workers)
    return float(np.mean(scan.E_T)), float(np.mean(scan.C_T))


def kappa_sweep(N, T, kappas, lyapunov: LyapunovConfig, n_theta=DEFAULT_QUADRATURE[0],
                n_phi=DEFAULT_QUADRATURE[1], p=DEFAULT_KICK_ANGLE, workers=1) -> PowerCurve:
    """Entangling power and global Lyapunov exponent over a kappa grid.

    The same Lyapunov sample seeds are reused at every kappa (common
    random numbers), so the curve shape is not polluted by sampling noise.
    """
    kappas = np.asarray(list(kappas), dtype=float)
    if kappas.size == 0:
        raise ValueError("kappa list must be non-empty")
    args = [(N, T, float(k), n_theta, n_phi, p, lyapunov) for k in kappas]
    results = pmap(_sweep_point, args, workers)
    return PowerCurve(
        kappa=kappas,
        e_T=np.array([r[0] for r in results]),
        c_T=np.array([r[1] for r in results]),
        lam=np.array([r[2] for r in results]),
        drift=sum(r[3] for r in results),
    )


def detect_revivals(C, window=REVIVAL_WINDOW, factor=REVIVAL_FACTOR):
    """Kick indices where C has a local maximum exceeding ``factor`` times
    the median of the preceding ``window`` kicks.

    Detection starts at n = window so the median window is always full.
    """
    C = np.asarray(C)
    hits = []
    for t in range(window, len(C) - 1):
        if C[t] > C[t - 1] and C[t] > C[t + 1]:
            if C[t] > factor * np.median(C[t - window : t]):
                hits.append(t)
    return np.array(hits, dtype=int)


def _entanglement_series(floquet, theta, phi, n_max):
    """E(n), C(n) for n = 0..n_max from one spin-coherent initial state."""
    system = floquet.system
    ops = collective_operators(system)
    state = spin_coherent_state(system, theta, phi)
    columns = evolution_series(state, floquet, np.arange(n_max + 1)).T
    first, second = moment_arrays(columns, ops)
    rhos = pair_density(first.T, second.transpose(2, 0, 1), system.N)
    return linear_entropy(rhos), concurrence(rhos)


def _theta_nodes(grid):
    if np.isscalar(grid):
        if grid < 2:
            raise ValueError("theta grid needs at least 2 nodes")
        nodes = np.linspace(0.0, np.pi, int(grid))
    else:
        nodes = np.asarray(grid, dtype=float)
    return np.clip(nodes, POLE_CLAMP, np.pi - POLE_CLAMP)


def _phi_nodes(grid):
    if np.isscalar(grid):
        if grid < 2:
            raise ValueError("phi grid needs at least 2 nodes")
        return np.linspace(-np.pi, np.pi, int(grid), endpoint=False)
    return np.asarray(grid, dtype=float)


def _chunk(cells, workers):
    if workers is None or workers <= 1:
        return [cells]
    pieces = min(len(cells), workers * 4)
    bounds = np.linspace(0, len(cells), pieces + 1).astype(int)
    return [cells[a:b] for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _scan_chunk(args):
    N, kappa, p, T, cells = args
    system = SpinSystem(N)
    floquet = floquet_operator(system, kappa, p)
    E = np.empty(len(cells))
    C = np.empty(len(cells))
    for i, (theta, phi) in enumerate(cells):
        e_series, c_series = _entanglement_series(floquet, theta, phi, T)
        E[i] = e_series[1:].mean()
        C[i] = c_series[1:].mean()
    return E, C


def _sweep_point(args):
    N, T, kappa, n_theta, n_phi, p, lyap = args
    e, c = entangling_power(N, kappa, T, n_theta, n_phi, p, workers=1)
    estimate = classical.lyapunov_samples(
        kappa, lyap.samples, lyap.kicks, lyap.transient, lyap.seed, workers=1
    )
    return e, c, estimate.mean, estimate.drift
