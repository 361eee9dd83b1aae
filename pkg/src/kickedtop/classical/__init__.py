"""Classical limit of the kicked top: the stroboscopic map on the unit
sphere, Poincare sections, and Lyapunov exponents.

One kick maps (X, Y, Z) to

    X' = Z cos(kappa X) + Y sin(kappa X)
    Y' = Y cos(kappa X) - Z sin(kappa X)
    Z' = -X

i.e. a quarter turn about y followed by a twist about z through angle
kappa * X'. At kappa = 3 the sphere is a mixed phase space; the point
(theta, phi) = (2.25, 0.63) is an elliptic period-1 point, while
(2.25, -2.51) maps to its mirror image under (X,Y,Z) -> (-X,Y,-Z) and
returns after two kicks (an elliptic period-2 orbit).

The map iteration is served by a compiled extension when available and by
a bit-identical pure-Python fallback otherwise; set KICKEDTOP_PURE_PYTHON=1
to force the fallback. ``backend()`` reports which one is active.
"""

import math
import os
from dataclasses import dataclass

import numpy as np

from .._parallel import pmap
from . import _impl_py

if os.environ.get("KICKEDTOP_PURE_PYTHON") == "1":
    _backend = _impl_py
    _BACKEND_NAME = "python"
else:
    try:
        from . import _kernels as _backend

        _BACKEND_NAME = "compiled"
    except ImportError:
        _backend = _impl_py
        _BACKEND_NAME = "python"

DEFAULT_KICKS = 10_000
DEFAULT_TRANSIENT = 100
DEFAULT_SAMPLES = 100


def backend() -> str:
    """Name of the active map kernel backend: 'compiled' or 'python'."""
    return _BACKEND_NAME


@dataclass(frozen=True)
class PhasePoint:
    """Point on the unit sphere, as normalized angular momentum (X, Y, Z)."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"phase point norm {norm!r} deviates from 1 by more than 1e-12")

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "PhasePoint":
        st = math.sin(theta)
        return cls(st * math.cos(phi), st * math.sin(phi), math.cos(theta))

    def to_angles(self):
        """Polar and azimuthal angles (theta in [0, pi], phi in (-pi, pi])."""
        return math.acos(max(-1.0, min(1.0, self.z))), math.atan2(self.y, self.x)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class LyapunovEstimate:
    """Per-sample Lyapunov exponents plus accumulated renormalization drift."""

    values: np.ndarray
    drift: float

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))

    @property
    def stderr(self) -> float:
        if len(self.values) < 2:
            return 0.0
        return float(np.std(self.values, ddof=1) / math.sqrt(len(self.values)))


@dataclass(frozen=True)
class PoincareSection:
    """Stroboscopic section: one (theta, phi) row per trajectory per kick."""

    traj_id: np.ndarray
    kick: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    drift: float


def kick(p: PhasePoint, kappa: float) -> PhasePoint:
    """Apply one kick of the classical map."""
    x, y, z, _ = _backend.step(p.x, p.y, p.z, kappa)
    return PhasePoint(x, y, z)


def jacobian(p: PhasePoint, kappa: float) -> np.ndarray:
    """Analytic Jacobian of the map at p, in ambient (X, Y, Z) coordinates.

    The radial direction is neutral (the map preserves the sphere), so
    tangent dynamics can run in 3-space without affecting the largest
    stretching rate; this avoids polar-chart singularities.
    """
    c = math.cos(kappa * p.x)
    s = math.sin(kappa * p.x)
    return np.array(
        [
            [kappa * (p.y * c - p.z * s), s, c],
            [-kappa * (p.z * c + p.y * s), c, -s],
            [-1.0, 0.0, 0.0],
        ]
    )


def trajectory(p0: PhasePoint, kappa: float, n: int) -> np.ndarray:
    """Orbit of p0 under n kicks; rows 0..n of (X, Y, Z), row 0 = p0."""
    points, _ = trajectory_with_drift(p0, kappa, n)
    return points


def trajectory_with_drift(p0: PhasePoint, kappa: float, n: int):
    if n < 1:
        raise ValueError("kick count must be >= 1")
    out = np.empty((n + 1, 3))
    drift = _backend.run_trajectory(p0.x, p0.y, p0.z, kappa, n, out)
    return out, drift


def lyapunov(
    p0: PhasePoint,
    kappa: float,
    n: int = DEFAULT_KICKS,
    transient: int = DEFAULT_TRANSIENT,
    seed: int = 0,
) -> float:
    """Largest Lyapunov exponent (per kick) of the orbit through p0.

    Benettin method: after `transient` kicks, a random unit tangent vector
    is pushed through the analytic Jacobian for n kicks with per-step
    renormalization; the exponent is the mean log stretch.
    """
    if n < 1:
        raise ValueError("kick count must be >= 1")
    vx, vy, vz = _random_tangent(np.random.SeedSequence((seed,)))
    lam, _ = _backend.run_lyapunov(p0.x, p0.y, p0.z, kappa, n, transient, vx, vy, vz)
    return lam


def lyapunov_samples(
    kappa: float,
    samples: int = DEFAULT_SAMPLES,
    n: int = DEFAULT_KICKS,
    transient: int = DEFAULT_TRANSIENT,
    seed: int = 0,
    workers: int = 1,
) -> LyapunovEstimate:
    """Lyapunov exponents at `samples` sphere-uniform initial points.

    Sample i is fully determined by (seed, i), so results are identical
    for any worker count.
    """
    if samples < 1:
        raise ValueError("sample count must be >= 1")
    args = [(kappa, n, transient, seed, i) for i in range(samples)]
    results = pmap(_lyapunov_sample, args, workers)
    values = np.array([lam for lam, _ in results])
    drift = sum(d for _, d in results)
    return LyapunovEstimate(values=values, drift=drift)


def global_lyapunov(
    kappa: float,
    samples: int = DEFAULT_SAMPLES,
    n: int = DEFAULT_KICKS,
    transient: int = DEFAULT_TRANSIENT,
    seed: int = 0,
    workers: int = 1,
) -> float:
    """Sphere average of the Lyapunov exponent; quantifies global chaos."""
    return lyapunov_samples(kappa, samples, n, transient, seed, workers).mean


def poincare_section(
    kappa: float,
    n_traj: int,
    n_kicks: int,
    seed: int,
    workers: int = 1,
) -> PoincareSection:
    """Stroboscopic sections of n_traj random trajectories, n_kicks each.

    Initial points are uniform on the sphere (uniform in cos(theta) and
    phi), trajectory i seeded by (seed, i). Rows are ordered by trajectory
    then kick (1..n_kicks); the random starting point itself is not a row.
    """
    if n_traj < 1 or n_kicks < 1:
        raise ValueError("trajectory and kick counts must be >= 1")
    args = [(kappa, n_kicks, seed, i) for i in range(n_traj)]
    results = pmap(_poincare_trajectory, args, workers)
    theta = np.concatenate([t for t, _, _ in results])
    phi = np.concatenate([p for _, p, _ in results])
    drift = sum(d for _, _, d in results)
    return PoincareSection(
        traj_id=np.repeat(np.arange(n_traj), n_kicks),
        kick=np.tile(np.arange(1, n_kicks + 1), n_traj),
        theta=theta,
        phi=phi,
        drift=drift,
    )


def _random_point(ss: np.random.SeedSequence):
    """Sphere-uniform point: uniform in cos(theta) and phi."""
    rng = np.random.default_rng(ss)
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(-math.pi, math.pi)
    r = math.sqrt(1.0 - z * z)
    return r * math.cos(phi), r * math.sin(phi), z


def _random_tangent(ss: np.random.SeedSequence):
    rng = np.random.default_rng(ss)
    v = rng.standard_normal(3)
    v /= np.linalg.norm(v)
    return v[0], v[1], v[2]


def _lyapunov_sample(args):
    kappa, n, transient, seed, i = args
    x, y, z = _random_point(np.random.SeedSequence((seed, i, 0)))
    vx, vy, vz = _random_tangent(np.random.SeedSequence((seed, i, 1)))
    return _backend.run_lyapunov(x, y, z, kappa, n, transient, vx, vy, vz)


def _poincare_trajectory(args):
    kappa, n_kicks, seed, i = args
    x, y, z = _random_point(np.random.SeedSequence((seed, i, 0)))
    out = np.empty((n_kicks + 1, 3))
    drift = _backend.run_trajectory(x, y, z, kappa, n_kicks, out)
    pts = out[1:]
    theta = np.arccos(np.clip(pts[:, 2], -1.0, 1.0))
    phi = np.arctan2(pts[:, 1], pts[:, 0])
    return theta, phi, drift
