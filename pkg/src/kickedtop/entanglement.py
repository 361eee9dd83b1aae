"""Two-qubit reduction of symmetric multiqubit states and entanglement
measures (linear entropy, Wootters concurrence).

For a permutation-symmetric state every qubit pair is equivalent, so the
pair density matrix is fully determined by the first and symmetrized
second moments of the collective spin:

    <sigma_1a>          = 2 <J_a> / N
    <sigma_1a sigma_2b> = (2 <J_a J_b + J_b J_a> - N delta_ab) / (N (N - 1))

These closed forms are validated against a dense partial-trace oracle
(``pair_oracle``) in the test suite; the oracle, not the transcription,
is the source of truth.

Pair-density basis ordering is (uu, ud, du, dd) with u the +1 eigenstate
of sigma_z; qubit 1 is the left tensor factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import InvariantViolation

if TYPE_CHECKING:
    from .spin_core import SpinState

EIGENVALUE_FLOOR = -1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# sigma_y (x) sigma_y, the spin-flip kernel of the concurrence (real matrix).
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y).real

# Basis tensors of the Pauli expansion: rho = (1/4)(I + sum_a a_a ONE_BODY[a]
#                                                  + sum_ab b_ab TWO_BODY[a,b])
_ONE_BODY = np.stack([np.kron(s, np.eye(2)) + np.kron(np.eye(2), s) for s in _PAULI])
_TWO_BODY = np.stack([np.stack([np.kron(sa, sb) for sb in _PAULI]) for sa in _PAULI])


@dataclass(frozen=True, eq=False)
class MomentSet:
    """Collective-spin moments of a state: <J_a> and <J_a J_b + J_b J_a>."""

    first: np.ndarray
    second_sym: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "first", np.asarray(self.first, dtype=float))
        object.__setattr__(self, "second_sym", np.asarray(self.second_sym, dtype=float))
        if self.first.shape != (3,) or self.second_sym.shape != (3, 3):
            raise ValueError("moments must be a 3-vector and a 3x3 matrix")


@dataclass(frozen=True, eq=False)
class TwoQubitDensity:
    """Validated 4x4 density matrix of a qubit pair, basis (uu, ud, du, dd)."""

    matrix: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.shape != (4, 4):
            raise ValueError(f"pair density must be 4x4, got shape {rho.shape}")
        if np.abs(rho - rho.conj().T).max() > 1e-10:
            raise InvariantViolation("pair density is not Hermitian within 1e-10")
        if abs(np.trace(rho).real - 1.0) > 1e-10:
            raise InvariantViolation("pair density trace deviates from 1 by more than 1e-10")
        if np.linalg.eigvalsh(rho).min() < EIGENVALUE_FLOOR:
            raise InvariantViolation("pair density has an eigenvalue below -1e-10")
        object.__setattr__(self, "matrix", rho)
        self.matrix.flags.writeable = False


def pair_density(first: np.ndarray, second_sym: np.ndarray, N: int) -> np.ndarray:
    """Pair density matrices from collective moments, batched.

    ``first`` has shape (..., 3) and ``second_sym`` shape (..., 3, 3);
    returns an array of shape (..., 4, 4). Inputs must come from
    permutation-symmetric states of N >= 2 qubits.
    """
    if N < 2:
        raise ValueError(f"pairwise reduction needs N >= 2 qubits, got N={N}")
    first = np.asarray(first, dtype=float)
    second_sym = np.asarray(second_sym, dtype=float)
    a = 2 * first / N
    b = (2 * second_sym - N * np.eye(3)) / (N * (N - 1))
    rho = np.einsum("...a,aij->...ij", a, _ONE_BODY)
    rho += np.einsum("...ab,abij->...ij", b, _TWO_BODY)
    rho += np.eye(4)
    return rho / 4


def reduce_to_pair(moments: MomentSet, N: int) -> TwoQubitDensity:
    """Two-qubit reduced density matrix of a symmetric N-qubit state."""
    return TwoQubitDensity(pair_density(moments.first, moments.second_sym, N))


def pair_oracle(state: "SpinState") -> TwoQubitDensity:
    """Brute-force pair reduction: expand to the full 2^N product basis and
    trace out qubits 3..N exactly. Validation oracle; N <= 12 only.
    """
    N = state.system.N
    if N < 2:
        raise ValueError(f"pairwise reduction needs N >= 2 qubits, got N={N}")
    if N > 12:
        raise ValueError(f"dense 2^N expansion not feasible for N={N} (max 12)")
    amps = state.amplitudes
    # |j,m> is the uniform superposition of the C(N,k) bitstrings with
    # k = j + m up spins; bit 0 encodes up so index 0 is |uu...u>.
    full = np.zeros(2**N, dtype=complex)
    for b in range(2**N):
        k = N - b.bit_count()
        full[b] = amps[k] / math.sqrt(math.comb(N, k))
    block = full.reshape(4, -1)
    return TwoQubitDensity(block @ block.conj().T)


def linear_entropy(rho) -> float:
    """Linear entropy 1 - Tr(rho^2); batched over leading axes.

    Roundoff can push the purity of a pure state epsilon above 1; the
    result is clamped to >= 0, while purity > 1 + 1e-10 is rejected as an
    invalid state.
    """
    mat = rho.matrix if isinstance(rho, TwoQubitDensity) else np.asarray(rho)
    purity = np.einsum("...ij,...ji->...", mat, mat).real
    if purity.max() > 1.0 + 1e-10:
        raise InvariantViolation(f"purity {purity.max()!r} exceeds 1 beyond roundoff")
    out = np.maximum(0.0, 1.0 - purity)
    return float(out) if out.ndim == 0 else out


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix; batched.

    max{0, l1 - l2 - l3 - l4} with l_i the descending square roots of the
    eigenvalues of rho (sy x sy) rho* (sy x sy). The l_i are evaluated as
    the singular values of the complex symmetric matrix X^T (sy x sy) X
    with X the sqrt(p_k)-scaled eigenvectors of rho: identical spectrum,
    but the roundoff floor stays O(eps) instead of O(sqrt(eps)), so
    separable states come out at ~1e-16 rather than ~1e-8. A rho
    eigenvalue below -1e-10 signals an invalid input and raises
    InvariantViolation; negatives above that are clamped to zero.
    """
    mat = rho.matrix if isinstance(rho, TwoQubitDensity) else np.asarray(rho)
    p, u = np.linalg.eigh(mat)
    if p.min() < EIGENVALUE_FLOOR:
        raise InvariantViolation(
            f"density matrix has eigenvalue {p.min():.3e} below -1e-10; "
            "input is not a valid density matrix"
        )
    x = u * np.sqrt(np.clip(p, 0.0, None))[..., None, :]
    tau = x.swapaxes(-1, -2) @ SPIN_FLIP @ x
    lam = np.linalg.svd(tau, compute_uv=False)
    out = np.maximum(0.0, lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3])
    return float(out) if out.ndim == 0 else out


def concurrence_direct(rho) -> float:
    """Concurrence via a general eigenvalue solve of rho (sy x sy) rho* (sy x sy).

    Textbook transcription used as a cross-check for `concurrence`; its
    noise floor for separable states is O(sqrt(eps)) ~ 1e-8, which is why
    it is not the shipped evaluation path.
    """
    mat = rho.matrix if isinstance(rho, TwoQubitDensity) else np.asarray(rho)
    flipped = mat @ SPIN_FLIP @ mat.conj() @ SPIN_FLIP
    lam = np.linalg.eigvals(flipped).real
    if lam.min() < EIGENVALUE_FLOOR:
        raise InvariantViolation(
            f"spin-flip spectrum has eigenvalue {lam.min():.3e} below -1e-10; "
            "input is not a valid density matrix"
        )
    lam = np.sqrt(np.sort(np.clip(lam, 0.0, None), axis=-1))
    out = np.maximum(0.0, lam[..., 3] - lam[..., 2] - lam[..., 1] - lam[..., 0])
    return float(out) if out.ndim == 0 else out
