"""Attractor qubit states, conditional big-spin evolution and spin cat states.

In the regime 1 << |zeta|^2 << N the qubit states (|0> +- e^{-i phi}|1>)/sqrt(2)
approximately decouple from the big spin, each branch of the big spin picking
up only the diagonal phases exp(-+ i lam t sqrt(J_- J_+ / N)).  Superposing the
two branches at the half-revival time t0 yields a cat state of the big spin.

Frame convention: the branch phases contain no free precession, so all
fidelity comparisons against exactly evolved states are made in the frame
co-rotating with the big spin's free evolution (the reduced state is
conjugated by exp(+i omega t (J_z + N/2)) before comparing).  This makes every
fidelity reported here independent of omega; at omega = 0 it coincides with
the lab frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import numpy as np

from .dicke import BigSpinState, SpinCoherentParams, spin_coherent
from .dynamics import TimeGrid, attractor_time, evolve, state_at
from .hamiltonians import CompositeState, ModelParams, composite_from_parts
from .sweeps import SweepGrid, run_grid

__all__ = [
    "CatSpec",
    "attractor_qubit_states",
    "conditional_evolution",
    "branch_overlap",
    "cat_norm_constant",
    "cat_state",
    "initial_composite",
    "reduced_bigspin_at",
    "fidelity_to_cat",
    "fidelity_surface",
    "fidelity_vs_time",
]


@dataclass(frozen=True)
class CatSpec:
    """Parameters of a spin cat: N component spins, polarization zeta, coupling."""

    N: int
    zeta: complex
    lam: float = 1.0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"invalid basis: N must be >= 1, got {self.N}")
        if self.lam <= 0:
            raise ValueError(f"coupling lam must be positive, got {self.lam}")

    @property
    def phi(self) -> float:
        return float(np.angle(self.zeta))

    @property
    def t0(self) -> float:
        return attractor_time(self.N, self.zeta, self.lam)


def attractor_qubit_states(phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal qubit pair (|0> +- e^{-i phi}|1>)/sqrt(2)."""
    plus = np.array([1.0, np.exp(-1j * phi)]) / np.sqrt(2)
    minus = np.array([1.0, -np.exp(-1j * phi)]) / np.sqrt(2)
    return plus, minus


def _branch_phases(N: int, t: float, lam: float) -> np.ndarray:
    # sqrt of the diagonal operator J_- J_+ / N, entries (n+1)(1 - n/N)
    n = np.arange(N + 1)
    return lam * t * np.sqrt((n + 1) * (1 - n / N))


def conditional_evolution(sign, t: float, state: BigSpinState, lam: float) -> BigSpinState:
    """Apply exp(-+ i lam t sqrt(J_- J_+ / N)) to a big-spin state.

    sign selects the attractor branch: "+" (or +1) applies the minus-sign
    exponential that travels with D_+, and vice versa.  Diagonal, so this is a
    pure per-amplitude phase and exactly norm preserving.
    """
    s = {"+": 1, "-": -1, 1: 1, -1: -1}.get(sign)
    if s is None:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    phases = np.exp(-1j * s * _branch_phases(state.N, t, lam))
    return BigSpinState(state.basis, phases * state.amplitudes)


def _branches(spec: CatSpec) -> tuple[BigSpinState, BigSpinState]:
    initial = spin_coherent(SpinCoherentParams(spec.N, spec.zeta, scaled=True))
    chi_plus = conditional_evolution("+", spec.t0, initial, spec.lam)
    chi_minus = conditional_evolution("-", spec.t0, initial, spec.lam)
    return chi_plus, chi_minus


def branch_overlap(spec: CatSpec) -> complex:
    """<chi_+|chi_-> between the two conditionally evolved branches at t0."""
    chi_plus, chi_minus = _branches(spec)
    return chi_plus.overlap(chi_minus)


def cat_norm_constant(spec: CatSpec) -> float:
    """M = 1 + Re<chi_+|chi_->, the normalization of the branch superposition."""
    return 1.0 + branch_overlap(spec).real


def cat_state(spec: CatSpec) -> BigSpinState:
    """(chi_+ + chi_-) / sqrt(2M): superposition of the two branch states at t0."""
    chi_plus, chi_minus = _branches(spec)
    m = 1.0 + chi_plus.overlap(chi_minus).real
    if m <= 1e-12:
        raise ValueError(
            f"cat normalization is singular (M = {m:.3e}): branches are anti-aligned"
        )
    amps = (chi_plus.amplitudes + chi_minus.amplitudes) / np.sqrt(2 * m)
    amps = amps / np.linalg.norm(amps)
    return BigSpinState(chi_plus.basis, amps)


def initial_composite(N: int, zeta: complex) -> CompositeState:
    """Qubit |0> times the scaled spin coherent state |N, zeta/sqrt(N)>."""
    spin = spin_coherent(SpinCoherentParams(N, zeta, scaled=True))
    return composite_from_parts(np.array([1.0, 0.0]), spin)


def _corotating_phases(N: int, omega: float, t: float) -> np.ndarray:
    return np.exp(1j * omega * t * np.arange(N + 1))


def reduced_bigspin_at(
    N: int,
    zeta: complex,
    lam: float,
    t: float,
    omega: float = 1.0,
    Omega: float = 1.0,
    rotating_frame: bool = True,
    method: str = "block",
) -> np.ndarray:
    """Exact reduced big-spin density matrix at time t from qubit |0>.

    With rotating_frame=True the free precession exp(-i omega t (J_z + N/2))
    is undone, which is the frame the branch states live in.
    """
    params = ModelParams(omega=omega, Omega=Omega, lam=lam, N=N)
    psi = state_at(params, initial_composite(N, zeta), t, method=method)
    mat = psi.reshape(2, N + 1)
    if rotating_frame:
        mat = mat * _corotating_phases(N, omega, t)
    return mat.T @ mat.conj()


def fidelity_to_cat(
    N: int,
    zeta: complex,
    lam: float = 1.0,
    omega: float = 1.0,
    Omega: float = 1.0,
    method: str = "block",
) -> float:
    """sqrt(<psi_cat| rho_BS(t0) |psi_cat>) against the exactly evolved state."""
    spec = CatSpec(N, zeta, lam)
    target = cat_state(spec)
    params = ModelParams(omega=omega, Omega=Omega, lam=lam, N=N)
    psi = state_at(params, initial_composite(N, zeta), spec.t0, method=method)
    mat = psi.reshape(2, N + 1) * _corotating_phases(N, omega, spec.t0)
    overlaps = mat @ target.amplitudes.conj()
    return float(np.sqrt(np.sum(np.abs(overlaps) ** 2)))


def _surface_cell(N, x, lam, omega, Omega):
    if not (np.isfinite(x) and x >= 0):
        raise ValueError(f"x = |zeta|^2/N must be non-negative, got {x}")
    zeta = np.sqrt(x * N)  # real positive; fidelity depends on |zeta| only
    return fidelity_to_cat(int(N), zeta, lam, omega, Omega)


def fidelity_surface(
    n_list,
    x_grid,
    lam: float = 1.0,
    omega: float = 1.0,
    Omega: float = 1.0,
    workers: int = 1,
) -> SweepGrid:
    """Cat-state fidelity at t0 over a grid of N (rows) and x = |zeta|^2/N (cols)."""
    cell = partial(_surface_cell, lam=lam, omega=omega, Omega=Omega)
    return run_grid(
        cell, n_list, x_grid, workers,
        row_name="N", col_name="zeta2_over_N", value_name="fidelity",
        meta={"lam": lam, "omega": omega, "Omega": Omega},
    )


def fidelity_vs_time(
    N: int,
    zeta: complex,
    grid: TimeGrid,
    lam: float = 1.0,
    omega: float = 1.0,
    Omega: float = 1.0,
) -> np.ndarray:
    """Fidelity of the (fixed) cat state against rho_BS(t) along the grid."""
    spec = CatSpec(N, zeta, lam)
    target = cat_state(spec).amplitudes
    params = ModelParams(omega=omega, Omega=Omega, lam=lam, N=N)
    traj = evolve(params, initial_composite(N, zeta), grid)
    states = traj.states.reshape(traj.times.size, 2, N + 1)
    frame = np.exp(1j * omega * np.outer(traj.times, np.arange(N + 1)))
    overlaps = np.einsum("n,tqn->tq", target.conj(), states * frame[:, None, :])
    return np.sqrt(np.sum(np.abs(overlaps) ** 2, axis=1))
