"""Exact unitary evolution of the composite system and derived observables.

The fast path exploits excitation conservation: the propagator factorizes into
2x2 blocks whose exponential is known in closed form, so a full trajectory
costs O(n_max) per time sample.  A dense eigendecomposition path is kept as an
independent oracle for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import maximum_filter1d

from .dicke import BigSpinState
from .hamiltonians import (
    Block,
    BlockDecomposition,
    CompositeState,
    ModelParams,
    block_coefficients,
    block_decompose,
    build_jc_hamiltonian,
    build_spin_hamiltonian,
)

__all__ = [
    "TimeGrid",
    "Trajectory",
    "make_propagator",
    "evolve",
    "state_at",
    "reduce_qubit",
    "reduce_bigspin",
    "linear_entropy",
    "fidelity",
    "attractor_time",
    "rabi_period",
    "sliding_envelope",
]

_CHUNK = 2048


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid in units of 1/lam."""

    t_start: float
    t_end: float
    samples: int

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError(f"need at least 2 samples, got {self.samples}")
        if not self.t_end > self.t_start:
            raise ValueError("t_end must exceed t_start")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.samples)

    @property
    def dt(self) -> float:
        return (self.t_end - self.t_start) / (self.samples - 1)


@dataclass
class Trajectory:
    """Time series of observables, with full state snapshots unless lean."""

    times: np.ndarray
    sigma_z: np.ndarray
    qubit_linear_entropy: np.ndarray
    energy: np.ndarray
    states: np.ndarray | None = None  # (T, 2*(n_max+1)) flat (q, n) amplitudes


class _BlockPropagator:
    """Closed-form e^{-iHt} from the block entries [[a_n, c_n], [c_n*, b_n]]."""

    def __init__(self, a, b, c, e_low, e_high):
        self.a, self.b, self.c = a, b, c
        self.e_low, self.e_high = e_low, e_high
        self.mid = (a + b) / 2
        self.half = (a - b) / 2
        self.r = np.hypot(self.half, np.abs(c))

    def apply(self, psi0: np.ndarray, times: np.ndarray) -> np.ndarray:
        n_blocks = self.a.size
        d = n_blocks + 1
        u0 = psi0[:n_blocks]
        v0 = psi0[d + 1 :]
        t = times[:, None]
        phase = np.exp(-1j * t * self.mid)
        rt = t * self.r
        cos = np.cos(rt)
        # sin(rt)/r with the r -> 0 limit t; r > 0 whenever the block couples
        r_safe = np.where(self.r == 0, 1.0, self.r)
        s_over_r = np.where(self.r == 0, t * np.ones_like(self.r), np.sin(rt) / r_safe)
        u = phase * ((cos - 1j * s_over_r * self.half) * u0 - 1j * s_over_r * self.c * v0)
        v = phase * (
            -1j * s_over_r * np.conj(self.c) * u0 + (cos + 1j * s_over_r * self.half) * v0
        )
        out = np.empty((times.size, 2 * d), dtype=complex)
        out[:, :n_blocks] = u
        out[:, d + 1 :] = v
        out[:, n_blocks] = np.exp(-1j * times * self.e_high) * psi0[n_blocks]
        out[:, d] = np.exp(-1j * times * self.e_low) * psi0[d]
        return out

    def energy(self, states: np.ndarray) -> np.ndarray:
        n_blocks = self.a.size
        d = n_blocks + 1
        u = states[:, :n_blocks]
        v = states[:, d + 1 :]
        e = (
            np.sum(self.a * np.abs(u) ** 2, axis=1)
            + np.sum(self.b * np.abs(v) ** 2, axis=1)
            + 2 * np.sum((np.conj(u) * self.c * v).real, axis=1)
        )
        e += self.e_high * np.abs(states[:, n_blocks]) ** 2
        e += self.e_low * np.abs(states[:, d]) ** 2
        return e


class _DensePropagator:
    """Eigendecomposition oracle; independent of the block closed form."""

    def __init__(self, h: np.ndarray):
        self.h = h
        self.evals, self.evecs = np.linalg.eigh(h)

    def apply(self, psi0: np.ndarray, times: np.ndarray) -> np.ndarray:
        coeff = self.evecs.conj().T @ psi0
        return (self.evecs @ (np.exp(-1j * np.outer(self.evals, times)) * coeff[:, None])).T

    def energy(self, states: np.ndarray) -> np.ndarray:
        return np.einsum("ti,ij,tj->t", states.conj(), self.h, states).real


def make_propagator(generator, n_max: int, method: str = "block"):
    """Build a propagator from ModelParams, a dense Hamiltonian, or blocks."""
    if method == "dense":
        if isinstance(generator, ModelParams):
            h = build_spin_hamiltonian(generator) if generator.is_spin else build_jc_hamiltonian(generator)
        elif isinstance(generator, BlockDecomposition):
            raise ValueError("dense method needs ModelParams or a dense matrix")
        else:
            h = np.asarray(generator, dtype=complex)
        if h.shape != (2 * (n_max + 1),) * 2:
            raise ValueError(f"dimension mismatch: H {h.shape} vs n_max {n_max}")
        return _DensePropagator(h)
    if method != "block":
        raise ValueError(f"unknown method {method!r}")
    if isinstance(generator, ModelParams):
        if generator.n_max != n_max:
            raise ValueError("dimension mismatch between params and state")
        a, b, c = block_coefficients(generator)
        e_low = -0.5 * generator.Omega
        e_high = generator.omega * generator.n_max + 0.5 * generator.Omega
        return _BlockPropagator(a, b, c, e_low, e_high)
    if not isinstance(generator, BlockDecomposition):
        generator = block_decompose(np.asarray(generator, dtype=complex), n_max)
    dec = generator
    d = dec.n_max + 1
    pair = {blk.indices: blk for blk in dec.blocks}
    a = np.empty(dec.n_max)
    b = np.empty(dec.n_max)
    c = np.empty(dec.n_max, dtype=complex)
    for n in range(dec.n_max):
        blk: Block = pair[(n, d + n + 1)]
        a[n] = blk.matrix[0, 0].real
        b[n] = blk.matrix[1, 1].real
        c[n] = blk.matrix[0, 1]
    return _BlockPropagator(a, b, c, pair[(d,)].matrix[0, 0].real, pair[(dec.n_max,)].matrix[0, 0].real)


def _qubit_observables(states: np.ndarray, d: int):
    u = states[:, :d]
    v = states[:, d:]
    p00 = np.sum(np.abs(u) ** 2, axis=1)
    p11 = np.sum(np.abs(v) ** 2, axis=1)
    coh = np.sum(u * np.conj(v), axis=1)
    sigma_z = p00 - p11
    purity = p00**2 + p11**2 + 2 * np.abs(coh) ** 2
    return sigma_z, 2.0 * (1.0 - purity)


def evolve(
    generator,
    psi0: CompositeState,
    grid: TimeGrid,
    method: str = "block",
    lean: bool = False,
) -> Trajectory:
    """Propagate psi0 along the grid under the given Hamiltonian.

    `generator` may be ModelParams (analytic block entries, fastest), a dense
    Hamiltonian matrix, or a BlockDecomposition.  method="dense" switches to
    the eigendecomposition oracle.  With lean=True only the observable series
    are kept, bounding memory for long sweeps.
    """
    times = grid.times
    d = psi0.n_max + 1
    prop = make_propagator(generator, psi0.n_max, method)
    sigma_z = np.empty(times.size)
    entropy = np.empty(times.size)
    energy = np.empty(times.size)
    states = None if lean else np.empty((times.size, 2 * d), dtype=complex)
    for lo in range(0, times.size, _CHUNK):
        hi = min(lo + _CHUNK, times.size)
        chunk = prop.apply(psi0.amplitudes, times[lo:hi])
        sigma_z[lo:hi], entropy[lo:hi] = _qubit_observables(chunk, d)
        energy[lo:hi] = prop.energy(chunk)
        if states is not None:
            states[lo:hi] = chunk
    return Trajectory(times, sigma_z, entropy, energy, states)


def state_at(generator, psi0: CompositeState, t: float, method: str = "block") -> np.ndarray:
    """Amplitudes of e^{-iHt} psi0 at a single time."""
    prop = make_propagator(generator, psi0.n_max, method)
    return prop.apply(psi0.amplitudes, np.array([float(t)]))[0]


def reduce_qubit(psi: CompositeState | np.ndarray) -> np.ndarray:
    """Partial trace over the big spin; 2x2 density matrix."""
    amps = getattr(psi, "amplitudes", psi)
    mat = np.asarray(amps).reshape(2, -1)
    return mat @ mat.conj().T


def reduce_bigspin(psi: CompositeState | np.ndarray) -> np.ndarray:
    """Partial trace over the qubit; (N+1)x(N+1) density matrix."""
    amps = getattr(psi, "amplitudes", psi)
    mat = np.asarray(amps).reshape(2, -1)
    return mat.T @ mat.conj()


def linear_entropy(rho: np.ndarray) -> float:
    """2*(1 - Tr rho^2); ranges over [0, 1] for a qubit."""
    return float(2.0 * (1.0 - np.trace(rho @ rho).real))


def fidelity(target: BigSpinState | np.ndarray, rho: np.ndarray) -> float:
    """sqrt(<psi|rho|psi>) of a pure target against a density matrix."""
    amps = getattr(target, "amplitudes", target)
    amps = np.asarray(amps).reshape(-1)
    if rho.shape != (amps.size, amps.size):
        raise ValueError(f"dimension mismatch: rho {rho.shape} vs target length {amps.size}")
    val = np.vdot(amps, rho @ amps).real
    return float(np.sqrt(max(val, 0.0)))


def attractor_time(N: float, zeta: complex, lam: float) -> float:
    """Half the revival time: pi*|zeta| / (lam*sqrt(1 + |zeta|^2/N)).

    Pass N = math.inf for the field-mode value pi*|zeta|/lam.
    """
    if lam <= 0:
        raise ValueError(f"coupling lam must be positive, got {lam}")
    az = abs(zeta)
    return float(np.pi * az / (lam * np.sqrt(1.0 + az**2 / N)))


def rabi_period(N: float, zeta: complex, lam: float) -> float:
    """2*pi / (2*lam*sqrt(<n>)) with <n> = |zeta|^2/(1 + |zeta|^2/N)."""
    nbar = abs(zeta) ** 2 / (1.0 + abs(zeta) ** 2 / N)
    if nbar == 0:
        raise ValueError("Rabi period undefined at zeta = 0")
    return float(np.pi / (lam * np.sqrt(nbar)))


def sliding_envelope(values: np.ndarray, times: np.ndarray, window: float) -> np.ndarray:
    """Sliding-window maximum of |values| with the window width in time units."""
    dt = times[1] - times[0]
    size = max(int(round(window / dt)), 1)
    return maximum_filter1d(np.abs(values), size=size, mode="nearest")
