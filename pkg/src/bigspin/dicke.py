"""Dicke-basis Hilbert space of a collective spin made of N spin-1/2 particles.

Everything here lives in the maximal j = N/2 subspace, which is (N+1)-dimensional.
Basis states are indexed by the number of up-spins n = 0..N, so index 0 is the
all-down state and (J_z + N/2) is diagonal with entries 0..N.  The module also
provides the isometry into a truncated Fock space under which the scaled ladder
operators J_pm/sqrt(N) contract to bosonic ladder operators as N grows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

__all__ = [
    "DickeBasis",
    "SpinCoherentParams",
    "BigSpinState",
    "FockState",
    "OPERATOR_KINDS",
    "collective_operator",
    "spin_coherent",
    "expectation",
    "commutator_defect",
    "embed_to_fock",
    "fock_coherent",
    "poisson_convergence",
]

_NORM_TOL = 1e-10


@dataclass(frozen=True)
class DickeBasis:
    """The j = N/2 subspace of N spin-1/2 particles, dimension N+1."""

    N: int

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise ValueError(f"invalid basis: N must be a positive integer, got {self.N!r}")

    @property
    def dim(self) -> int:
        return self.N + 1

    @property
    def j(self) -> float:
        return self.N / 2


@dataclass(frozen=True)
class SpinCoherentParams:
    """Parameters of a spin coherent state.

    `zeta` is the complex polarization parameter; when `scaled` is True the
    constructor uses zeta/sqrt(N), which is the convention used for all the
    collapse-and-revival initial states in this package.
    """

    N: int
    zeta: complex
    scaled: bool = True


class BigSpinState:
    """Pure state of the collective spin: N+1 complex amplitudes over up-spin count."""

    __slots__ = ("basis", "amplitudes")

    def __init__(self, basis: DickeBasis, amplitudes: np.ndarray):
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.shape != (basis.dim,):
            raise ValueError(
                f"dimension mismatch: expected {basis.dim} amplitudes, got {amplitudes.shape}"
            )
        norm = np.linalg.norm(amplitudes)
        if not abs(norm - 1.0) <= _NORM_TOL:  # rejects NaN as well
            raise ValueError(f"state not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
        self.basis = basis
        self.amplitudes = amplitudes
        self.amplitudes.setflags(write=False)

    @property
    def N(self) -> int:
        return self.basis.N

    def overlap(self, other: "BigSpinState") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


class FockState:
    """Truncated field-mode state: cutoff+1 complex amplitudes over photon number."""

    __slots__ = ("cutoff", "amplitudes")

    def __init__(self, cutoff: int, amplitudes: np.ndarray):
        if cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {cutoff}")
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.shape != (cutoff + 1,):
            raise ValueError(
                f"dimension mismatch: expected {cutoff + 1} amplitudes, got {amplitudes.shape}"
            )
        norm = np.linalg.norm(amplitudes)
        if not abs(norm - 1.0) <= _NORM_TOL:
            raise ValueError(f"state not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
        self.cutoff = cutoff
        self.amplitudes = amplitudes
        self.amplitudes.setflags(write=False)

    def overlap(self, other: "FockState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def _log_binomial(N: int, n: np.ndarray) -> np.ndarray:
    # log(N! / ((N-n)! n!)) via log-gamma; safe up to N ~ 1e6
    return gammaln(N + 1) - gammaln(N - n + 1) - gammaln(n + 1)


def spin_coherent(params: SpinCoherentParams) -> BigSpinState:
    """Spin coherent state with binomial amplitude profile over the Dicke basis.

    Amplitude on n up-spins is (1+|z|^2)^(-N/2) * sqrt(binom(N,n)) * z^n with
    z = zeta/sqrt(N) when scaled.  Computed in log space so the binomial
    weights stay finite for N in the thousands.
    """
    basis = DickeBasis(params.N)
    N = params.N
    z = complex(params.zeta)
    if not np.isfinite(z):
        raise ValueError(f"zeta must be finite, got {params.zeta!r}")
    if params.scaled:
        z = z / np.sqrt(N)
    n = np.arange(N + 1)
    if z == 0:
        amps = np.zeros(N + 1, dtype=complex)
        amps[0] = 1.0
        return BigSpinState(basis, amps)
    log_mag = (
        -0.5 * N * np.log1p(abs(z) ** 2)
        + 0.5 * _log_binomial(N, n)
        + n * np.log(abs(z))
    )
    phase = n * np.angle(z)
    amps = np.exp(log_mag) * np.exp(1j * phase)
    amps /= np.linalg.norm(amps)
    return BigSpinState(basis, amps)


OPERATOR_KINDS = (
    "jz_shifted",
    "jplus_scaled",
    "jminus_scaled",
    "jy",
    "jsquared",
    "jminus_jplus_over_n",
)


def collective_operator(kind: str, basis: DickeBasis) -> np.ndarray:
    """Dense matrix of a collective spin operator in the up-spin-count basis.

    Scaled ladder operators are J_pm/sqrt(N), with matrix element
    <n+1| J_+/sqrt(N) |n> = sqrt((n+1)(1 - n/N)).  `jy` is the unscaled
    (physical) y component (J_+ - J_-)/(2i), whose elements are sqrt(N) times
    the scaled ones; it is what rotations and Fisher information use.
    """
    N = basis.N
    n = np.arange(N + 1)
    if kind == "jz_shifted":
        return np.diag(n.astype(float)).astype(complex)
    if kind == "jplus_scaled":
        sub = np.sqrt((n[:-1] + 1) * (1 - n[:-1] / N))
        return np.diag(sub, -1).astype(complex)
    if kind == "jminus_scaled":
        return collective_operator("jplus_scaled", basis).conj().T
    if kind == "jy":
        jp = np.sqrt(N) * collective_operator("jplus_scaled", basis)
        return (jp - jp.conj().T) / 2j
    if kind == "jsquared":
        j = N / 2
        return (j * (j + 1)) * np.eye(N + 1, dtype=complex)
    if kind == "jminus_jplus_over_n":
        return np.diag((n + 1) * (1 - n / N)).astype(complex)
    raise ValueError(f"unknown operator kind {kind!r}; expected one of {OPERATOR_KINDS}")


def expectation(op: np.ndarray, state) -> complex:
    """<psi|op|psi> for a BigSpinState, composite state or raw amplitude vector."""
    amps = getattr(state, "amplitudes", state)
    amps = np.asarray(amps).reshape(-1)
    if op.shape != (amps.size, amps.size):
        raise ValueError(f"dimension mismatch: operator {op.shape} vs state length {amps.size}")
    return complex(np.vdot(amps, op @ amps))


def commutator_defect(N: int, zeta: complex) -> float:
    """Deviation of <[J_-/sqrt(N), J_+/sqrt(N)]> from the bosonic value 1.

    Evaluated on the scaled spin coherent state |N, zeta/sqrt(N)> by building
    the commutator matrix explicitly; equals 1 - 2|zeta|^2/(N + |zeta|^2).
    """
    basis = DickeBasis(N)
    state = spin_coherent(SpinCoherentParams(N, zeta, scaled=True))
    jp = collective_operator("jplus_scaled", basis)
    jm = collective_operator("jminus_scaled", basis)
    comm = jm @ jp - jp @ jm
    val = expectation(comm, state)
    return float(val.real)


def embed_to_fock(state: BigSpinState) -> FockState:
    """Isometry sending the n-up-spins Dicke state to the n-photon Fock state."""
    return FockState(state.N, state.amplitudes.copy())


def fock_coherent(zeta: complex, cutoff: int) -> FockState:
    """Truncated coherent state of the field mode, renormalized after truncation.

    Raises if the truncated probability weight is >= 1e-10, since silent
    leakage would corrupt comparisons against the collective-spin model.
    """
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    z = complex(zeta)
    n = np.arange(cutoff + 1)
    if z == 0:
        amps = np.zeros(cutoff + 1, dtype=complex)
        amps[0] = 1.0
        return FockState(cutoff, amps)
    log_mag = -0.5 * abs(z) ** 2 + n * np.log(abs(z)) - 0.5 * gammaln(n + 1)
    mag = np.exp(log_mag)
    leakage = 1.0 - float(np.sum(mag**2))
    if leakage >= 1e-10:
        raise ValueError(
            f"truncation leakage {leakage:.3e} >= 1e-10 at cutoff {cutoff} for |zeta|^2 = "
            f"{abs(z) ** 2:.4g}; increase the cutoff"
        )
    amps = mag * np.exp(1j * n * np.angle(z))
    amps /= np.linalg.norm(amps)
    return FockState(cutoff, amps)


def poisson_convergence(N: int, zeta: complex) -> float:
    """Infidelity between the embedded spin coherent state and the coherent state.

    1 - |<coherent(zeta) | f(spin_coherent(N, zeta/sqrt(N)))>|^2; tends to zero
    as N grows at fixed zeta (binomial-to-Poisson limit of the profile).
    """
    spin = spin_coherent(SpinCoherentParams(N, zeta, scaled=True))
    embedded = embed_to_fock(spin)
    field = fock_coherent(zeta, cutoff=N)
    return 1.0 - abs(field.overlap(embedded)) ** 2
