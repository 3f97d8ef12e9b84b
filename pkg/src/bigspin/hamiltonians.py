"""Qubit-big-spin and truncated Jaynes-Cummings Hamiltonians.

Composite basis ordering is qubit-major and fixed everywhere in the package:
flat index (q, n) -> q*(N+1) + n, with q = 0 the qubit level that has
sigma_z = +1 and n the up-spin count (or photon number).  The coupling
conserves total excitation n + [q == 0], so the matrix splits into 2x2 blocks
pairing (q=0, n) with (q=1, n+1), plus two 1x1 blocks at (q=1, 0) and
(q=0, n_max); all fast evolution code relies on that structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dicke import BigSpinState, DickeBasis, collective_operator
from .errors import InvariantViolation

__all__ = [
    "ModelParams",
    "CompositeState",
    "Block",
    "BlockDecomposition",
    "build_spin_hamiltonian",
    "build_jc_hamiltonian",
    "block_decompose",
    "block_coefficients",
    "excitation_operator",
    "composite_from_parts",
]

_NORM_TOL = 1e-10


@dataclass(frozen=True)
class ModelParams:
    """Frequencies and coupling of the resonant (or detuned) model.

    `omega` is the big-spin/field splitting, `Omega` the qubit splitting and
    `lam` the coupling strength.  Exactly one of `N` (collective spin) or
    `cutoff` (field truncation) selects the model flavor.
    """

    omega: float
    Omega: float
    lam: float
    N: int | None = None
    cutoff: int | None = None

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError(f"coupling lam must be positive, got {self.lam}")
        if (self.N is None) == (self.cutoff is None):
            raise ValueError("exactly one of N (spin model) or cutoff (JC model) is required")
        size = self.N if self.N is not None else self.cutoff
        if size < 1:
            raise ValueError(f"invalid basis: size must be >= 1, got {size}")

    @property
    def resonant(self) -> bool:
        return self.Omega == self.omega

    @property
    def n_max(self) -> int:
        """Largest big-spin index (N) or photon number (cutoff)."""
        return self.N if self.N is not None else self.cutoff  # type: ignore[return-value]

    @property
    def is_spin(self) -> bool:
        return self.N is not None


class CompositeState:
    """Pure state of qubit tensor big spin, 2*(N+1) amplitudes in (q, n) order."""

    __slots__ = ("n_max", "amplitudes")

    def __init__(self, n_max: int, amplitudes: np.ndarray):
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if amplitudes.shape != (2 * (n_max + 1),):
            raise ValueError(
                f"dimension mismatch: expected {2 * (n_max + 1)} amplitudes, "
                f"got {amplitudes.shape}"
            )
        norm = np.linalg.norm(amplitudes)
        if not abs(norm - 1.0) <= _NORM_TOL:
            raise ValueError(f"state not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
        self.n_max = n_max
        self.amplitudes = amplitudes
        self.amplitudes.setflags(write=False)

    @property
    def dim(self) -> int:
        return 2 * (self.n_max + 1)

    def branch(self, q: int) -> np.ndarray:
        """Big-spin amplitude vector conditioned on qubit level q (not normalized)."""
        d = self.n_max + 1
        return self.amplitudes[q * d : (q + 1) * d]


def composite_from_parts(qubit: np.ndarray, spin: BigSpinState | np.ndarray) -> CompositeState:
    """Product state (qubit amplitudes) tensor (big-spin amplitudes)."""
    spin_amps = getattr(spin, "amplitudes", spin)
    qubit = np.asarray(qubit, dtype=complex)
    if qubit.shape != (2,):
        raise ValueError(f"qubit amplitudes must have length 2, got {qubit.shape}")
    flat = np.kron(qubit, np.asarray(spin_amps, dtype=complex))
    return CompositeState(len(spin_amps) - 1, flat)


def build_spin_hamiltonian(params: ModelParams) -> np.ndarray:
    """H = omega*(J_z + N/2) + (Omega/2)*sigma_z + (lam/sqrt(N))*(J_+ s_- + J_- s_+).

    The omega*N/2 shift is kept so the big-spin ground state sits at energy
    zero.  Returned dense on the 2(N+1)-dimensional composite space.
    """
    if params.N is None:
        raise ValueError("build_spin_hamiltonian needs params.N")
    N = params.N
    basis = DickeBasis(N)
    eye_s = np.eye(N + 1)
    jz_shifted = collective_operator("jz_shifted", basis).real
    jp_scaled = collective_operator("jplus_scaled", basis).real
    sigma_z = np.diag([1.0, -1.0])
    sigma_p = np.array([[0.0, 1.0], [0.0, 0.0]])  # |0><1|
    sigma_m = sigma_p.T
    h = (
        params.omega * np.kron(np.eye(2), jz_shifted)
        + 0.5 * params.Omega * np.kron(sigma_z, eye_s)
        + params.lam * (np.kron(sigma_m, jp_scaled) + np.kron(sigma_p, jp_scaled.T))
    )
    return h.astype(complex)


def build_jc_hamiltonian(params: ModelParams) -> np.ndarray:
    """H = omega*a'a + (Omega/2)*sigma_z + lam*(a' s_- + a s_+), truncated at cutoff."""
    if params.cutoff is None:
        raise ValueError("build_jc_hamiltonian needs params.cutoff")
    nc = params.cutoff
    n = np.arange(nc + 1)
    adag = np.diag(np.sqrt(n[:-1] + 1.0), -1)
    number = np.diag(n.astype(float))
    sigma_z = np.diag([1.0, -1.0])
    sigma_p = np.array([[0.0, 1.0], [0.0, 0.0]])
    sigma_m = sigma_p.T
    h = (
        params.omega * np.kron(np.eye(2), number)
        + 0.5 * params.Omega * np.kron(sigma_z, np.eye(nc + 1))
        + params.lam * (np.kron(sigma_m, adag) + np.kron(sigma_p, adag.T))
    )
    return h.astype(complex)


def excitation_operator(n_max: int) -> np.ndarray:
    """Total excitation (J_z + N/2) x I + I x (sigma_z + 1)/2; commutes with both models."""
    d = n_max + 1
    number = np.diag(np.arange(d, dtype=float))
    qubit_exc = np.diag([1.0, 0.0])
    return np.kron(np.eye(2), number) + np.kron(qubit_exc, np.eye(d))


@dataclass(frozen=True)
class Block:
    """One invariant block: flat indices into the composite space and the submatrix."""

    indices: tuple[int, ...]
    matrix: np.ndarray


@dataclass(frozen=True)
class BlockDecomposition:
    n_max: int
    blocks: list[Block] = field(default_factory=list)

    def eigenvalues(self) -> np.ndarray:
        """All eigenvalues, from per-block diagonalization."""
        vals = []
        for b in self.blocks:
            if len(b.indices) == 1:
                vals.append(b.matrix[0, 0].real)
            else:
                a, c = b.matrix[0, 0].real, b.matrix[0, 1]
                d = b.matrix[1, 1].real
                m, half = (a + d) / 2, (a - d) / 2
                r = np.hypot(half, abs(c))
                vals.extend([m - r, m + r])
        return np.sort(np.array(vals))


def block_decompose(h: np.ndarray, n_max: int) -> BlockDecomposition:
    """Split a conserved-excitation Hamiltonian into its 2x2 and 1x1 blocks.

    Raises InvariantViolation if any matrix element outside the expected
    pairing exceeds 1e-14, which guards against passing a Hamiltonian that
    does not conserve excitation number.
    """
    d = n_max + 1
    if h.shape != (2 * d, 2 * d):
        raise ValueError(f"dimension mismatch: expected {(2 * d, 2 * d)}, got {h.shape}")
    mask = np.zeros_like(h, dtype=bool)
    blocks: list[Block] = []
    for n in range(n_max):
        i, k = n, d + n + 1  # (q=0, n) and (q=1, n+1)
        sub = np.array([[h[i, i], h[i, k]], [h[k, i], h[k, k]]])
        blocks.append(Block((i, k), sub))
        mask[np.ix_([i, k], [i, k])] = True
    for idx in (d, n_max):  # (q=1, n=0) and (q=0, n=n_max)
        blocks.append(Block((idx,), h[idx : idx + 1, idx : idx + 1].copy()))
        mask[idx, idx] = True
    stray = np.max(np.abs(h[~mask])) if (~mask).any() else 0.0
    if stray > 1e-14:
        raise InvariantViolation(
            f"off-block element {stray:.3e} > 1e-14: matrix does not conserve excitation"
        )
    return BlockDecomposition(n_max, blocks)


def block_coefficients(params: ModelParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Analytic per-block entries (a_n, b_n, c_n) for n = 0..n_max-1.

    a_n and b_n are the diagonal energies of (q=0, n) and (q=1, n+1); c_n the
    real coupling between them: lam*sqrt((n+1)(1-n/N)) for the spin model,
    lam*sqrt(n+1) for the JC model.
    """
    n = np.arange(params.n_max, dtype=float)
    a = params.omega * n + 0.5 * params.Omega
    b = params.omega * (n + 1) - 0.5 * params.Omega
    if params.is_spin:
        c = params.lam * np.sqrt((n + 1) * (1 - n / params.N))
    else:
        c = params.lam * np.sqrt(n + 1)
    return a, b, c
