"""Collective spin operators, Dicke/spin-coherent states, and kicked-top
Floquet evolution for N qubits restricted to the symmetric sector.

The symmetric sector of N qubits is spanned by the Dicke states |j,m>
with j = N/2 and m = -j..j; every array in this module is ordered by
ascending m (so Jz is diagonal with increasing entries). One kick of
the top is a turn by angle p about the y axis followed by a torsion
(twist) quadratic in Jz with strength kappa.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .entanglement import MomentSet

DEFAULT_KICK_ANGLE = np.pi / 2


def _readonly(a):
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SpinSystem:
    """N qubits in the symmetric sector: spin j = N/2, dimension N + 1."""

    N: int

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise ValueError(f"qubit count must be a positive integer, got {self.N!r}")

    @property
    def j(self) -> float:
        return self.N / 2

    @property
    def dim(self) -> int:
        return self.N + 1

    def m_values(self) -> np.ndarray:
        """Jz eigenvalues m = -j, -j+1, ..., +j (exact in binary floats)."""
        return np.arange(self.dim) - self.j


@dataclass(frozen=True, eq=False)
class SpinState:
    """Unit-norm amplitude vector over |j,m>, ordered by ascending m."""

    system: SpinSystem
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.system.dim,):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, expected ({self.system.dim},)"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state norm {norm!r} deviates from 1 by more than 1e-12")
        object.__setattr__(self, "amplitudes", _readonly(amps))


@dataclass(frozen=True, eq=False)
class CollectiveOperators:
    """Dense collective spin matrices J_alpha = sum_i sigma_i_alpha / 2."""

    system: SpinSystem
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    jz2: np.ndarray


@dataclass(frozen=True, eq=False)
class FloquetOperator:
    """One-kick unitary of the top plus its cached eigenphase decomposition.

    ``matrix`` acts as twist(kappa) after turn(p); ``eigenvectors`` columns
    are orthonormal eigenstates with eigenvalues exp(1j * eigenphases).
    """

    system: SpinSystem
    kappa: float
    p: float
    matrix: np.ndarray
    eigenphases: np.ndarray
    eigenvectors: np.ndarray


@functools.lru_cache(maxsize=None)
def _collective_cached(N):
    system = SpinSystem(N)
    j = system.j
    m = system.m_values()
    # <j,m+1|J+|j,m> = sqrt(j(j+1) - m(m+1))
    raising = np.zeros((system.dim, system.dim), dtype=complex)
    ladder = np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1))
    raising[np.arange(1, system.dim), np.arange(system.dim - 1)] = ladder
    lowering = raising.conj().T
    jx = (raising + lowering) / 2
    jy = (raising - lowering) / 2j
    jz = np.diag(m).astype(complex)
    return CollectiveOperators(
        system=system,
        jx=_readonly(jx),
        jy=_readonly(jy),
        jz=_readonly(jz),
        jz2=_readonly(jz @ jz),
    )


def collective_operators(system: SpinSystem) -> CollectiveOperators:
    """Build (and cache) Jx, Jy, Jz and Jz^2 in the Dicke basis."""
    return _collective_cached(system.N)


def dicke_state(system: SpinSystem, m) -> SpinState:
    """Basis state |j,m>; m must lie in -j..j and differ from -j by an integer."""
    j = system.j
    idx = m + j
    if abs(idx - round(idx)) > 1e-9 or not (-1e-9 <= idx <= system.dim - 1 + 1e-9):
        raise ValueError(f"m={m} is not a valid Jz eigenvalue for j={j}")
    amps = np.zeros(system.dim, dtype=complex)
    amps[round(idx)] = 1.0
    return SpinState(system, amps)


def rotation_operator(system: SpinSystem, theta: float, phi: float) -> np.ndarray:
    """Unitary exp{i theta (Jx sin(phi) - Jy cos(phi))}.

    Computed by eigendecomposition of the Hermitian generator, so the
    result is unitary to roundoff for any angles.
    """
    ops = collective_operators(system)
    gen = theta * (np.sin(phi) * ops.jx - np.cos(phi) * ops.jy)
    w, u = np.linalg.eigh(gen)
    return (u * np.exp(1j * w)) @ u.conj().T


def spin_coherent_state(system: SpinSystem, theta: float, phi: float) -> SpinState:
    """Rotated maximal-weight state R(theta, phi)|j,j>.

    A product state of N identical qubits whose mean spin direction is
    (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)); it carries no
    entanglement of any kind.
    """
    rot = rotation_operator(system, theta, phi)
    amps = rot[:, -1].copy()
    amps /= np.linalg.norm(amps)
    return SpinState(system, amps)


def floquet_operator(system: SpinSystem, kappa: float, p: float = DEFAULT_KICK_ANGLE) -> FloquetOperator:
    """One-kick propagator: turn by p about y, then twist with strength kappa.

    The twist phase on |j,m> is exp(-1j * kappa * m^2 / (2j)). The
    eigenphase decomposition is obtained from a complex Schur
    factorization (exactly unitary eigenvector columns), and is cached on
    the returned object for stroboscopic evolution.
    """
    if kappa < 0:
        raise ValueError(f"twist strength must be >= 0, got {kappa}")
    ops = collective_operators(system)
    wy, uy = np.linalg.eigh(ops.jy)
    turn = (uy * np.exp(-1j * p * wy)) @ uy.conj().T
    m = system.m_values()
    twist_phases = np.exp(-1j * kappa * m**2 / (2 * system.j))
    matrix = twist_phases[:, None] * turn
    # Schur of a normal matrix: T is diagonal to roundoff and Z is unitary.
    t, z = scipy.linalg.schur(matrix, output="complex")
    return FloquetOperator(
        system=system,
        kappa=float(kappa),
        p=float(p),
        matrix=_readonly(matrix),
        eigenphases=_readonly(np.angle(np.diag(t))),
        eigenvectors=_readonly(z),
    )


def evolve(state: SpinState, floquet: FloquetOperator, n: int) -> SpinState:
    """State after n kicks, via the eigenphase form of the propagator."""
    if state.system != floquet.system:
        raise ValueError("state and Floquet operator live on different systems")
    if n < 0:
        raise ValueError("kick count must be >= 0")
    amps = evolution_series(state, floquet, [n])[0]
    return SpinState(state.system, amps)


def evolution_series(state: SpinState, floquet: FloquetOperator, kicks) -> np.ndarray:
    """Amplitudes after each kick count in ``kicks``; shape (len(kicks), dim).

    Projects once onto the Floquet eigenbasis, applies exp(1j * n * phi)
    per requested n and reconstructs, so the cost is one dense product per
    output row regardless of n.
    """
    if state.system != floquet.system:
        raise ValueError("state and Floquet operator live on different systems")
    n = np.asarray(kicks)
    v = floquet.eigenvectors
    coeff = v.conj().T @ state.amplitudes
    phases = np.exp(1j * np.multiply.outer(floquet.eigenphases, n))
    return (v @ (coeff[:, None] * phases)).T


def moments(state: SpinState, ops: CollectiveOperators) -> MomentSet:
    """First moments <J_a> and symmetrized second moments <J_a J_b + J_b J_a>."""
    if state.system != ops.system:
        raise ValueError("state and operators live on different systems")
    first, second = moment_arrays(state.amplitudes[:, None], ops)
    return MomentSet(first=first[:, 0], second_sym=second[:, :, 0])


def moment_arrays(columns: np.ndarray, ops: CollectiveOperators):
    """Moments of a batch of states given as columns of a (dim, T) array.

    Returns ``first`` with shape (3, T) holding <J_a> and ``second`` with
    shape (3, 3, T) holding <J_a J_b + J_b J_a>; both are real because the
    observables are Hermitian.
    """
    applied = np.stack([ops.jx @ columns, ops.jy @ columns, ops.jz @ columns])
    first = np.einsum("it,ait->at", columns.conj(), applied).real
    # <Ja Jb + Jb Ja> = 2 Re <Ja psi | Jb psi> for Hermitian Ja, Jb.
    second = 2 * np.einsum("ait,bit->abt", applied.conj(), applied).real
    return first, second
