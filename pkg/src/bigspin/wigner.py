"""Spherical Wigner quasi-probability of big-spin density matrices.

Kernel convention (a deliberate choice, since several normalizations exist in
the literature): the state is expanded in orthonormal irreducible tensor
operators T_lm, and

    W(theta, phi) = sqrt((2j+1)/(4 pi)) * sum_{l,m} Tr(rho T_lm^dag) Y_lm(theta, phi),

which makes the sphere integral of W exactly 1 for unit-trace rho, gives the
constant 1/(4 pi) for the maximally mixed state, and makes the quadrature of
W1*W2 equal to (2j+1)/(4 pi) * Tr(rho1 rho2).

Orientation convention: the all-down state (Dicke index n = 0) sits at the
north pole theta = 0, and a spin coherent state with polarization parameter
z = |z| e^{i phi0} peaks at (2 arctan|z|, phi0).  Concretely the sphere frame
axes are X = x, Y = -y, Z = -z in terms of the physical collective-spin axes,
so the physical rotation exp(i theta J_y) moves the north pole toward
(theta, phi=0) on the sphere.

Spherical harmonics use the Condon-Shortley phase and are evaluated with the
stable fully normalized associated-Legendre recurrence

    B_0^0 = sqrt(1/4pi),
    B_m^m = -sqrt((2m+1)/(2m)) sin(theta) B_{m-1}^{m-1},
    B_{m+1}^m = sqrt(2m+3) cos(theta) B_m^m,
    B_l^m = sqrt((4l^2-1)/(l^2-m^2)) [cos(theta) B_{l-1}^m
            - sqrt(((l-1)^2-m^2)/(4(l-1)^2-1)) B_{l-2}^m],

with Y_lm = B_l^m e^{i m phi} for m >= 0 and Y_{l,-m} = (-1)^m conj(Y_lm).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import InvariantViolation

__all__ = [
    "SphereGrid",
    "MultipoleDecomposition",
    "clebsch_gordan",
    "multipole_operator",
    "multipole_decomposition",
    "wigner_function",
    "wigner_at",
    "sphere_overlap",
    "overlap_constant",
]


@dataclass(frozen=True)
class SphereGrid:
    """Gauss-Legendre nodes in cos(theta) times a uniform phi grid.

    The quadrature weights sum to 4 pi; with n_theta, n_phi >= 2j+1 the grid
    integrates products of two degree-2j expansions exactly.
    """

    n_theta: int
    n_phi: int

    def __post_init__(self):
        if self.n_theta < 1 or self.n_phi < 1:
            raise ValueError("grid sizes must be positive")

    @cached_property
    def _gl(self):
        x, w = np.polynomial.legendre.leggauss(self.n_theta)
        order = np.argsort(-x)  # theta ascending from the north pole
        return x[order], w[order]

    @property
    def theta(self) -> np.ndarray:
        return np.arccos(self._gl[0])

    @property
    def phi(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_phi) / self.n_phi

    @property
    def weights(self) -> np.ndarray:
        """(n_theta, n_phi) quadrature weights; their sum is 4 pi."""
        return np.outer(self._gl[1], np.full(self.n_phi, 2 * np.pi / self.n_phi))


def _two(x, name: str) -> int:
    """Doubled integer representation of a half-integer argument."""
    t = 2 * float(x)
    ti = round(t)
    if abs(t - ti) > 1e-9:
        raise ValueError(f"{name} = {x!r} is not a half-integer")
    return int(ti)


def _lf(n: int) -> float:
    """log(n!) for non-negative integer n."""
    return math.lgamma(n + 1)


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """Condon-Shortley Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>.

    Racah's closed-form sum, run in log-factorial arithmetic so it stays
    finite for angular momenta of several hundred.  Returns 0 when M is not
    m1+m2 or (j1, j2, J) violate the triangle rule; raises on arguments that
    are not half-integers or have |m| > j.
    """
    tj1, tm1 = _two(j1, "j1"), _two(m1, "m1")
    tj2, tm2 = _two(j2, "j2"), _two(m2, "m2")
    tJ, tM = _two(J, "J"), _two(M, "M")
    for tj, tm, nm in ((tj1, tm1, "m1"), (tj2, tm2, "m2"), (tJ, tM, "M")):
        if tj < 0:
            raise ValueError("angular momenta must be non-negative")
        if abs(tm) > tj:
            raise ValueError(f"|{nm}| exceeds its angular momentum")
        if (tj + tm) % 2:
            raise ValueError(f"{nm} is not integer-spaced from its angular momentum")
    if tm1 + tm2 != tM:
        return 0.0
    if tJ < abs(tj1 - tj2) or tJ > tj1 + tj2 or (tj1 + tj2 + tJ) % 2:
        return 0.0

    def h(t):  # halve a doubled integer that is known to be even
        return t // 2

    log_pref = 0.5 * (
        math.log(tJ + 1.0)
        + _lf(h(tj1 + tj2 - tJ))
        + _lf(h(tj1 - tj2 + tJ))
        + _lf(h(-tj1 + tj2 + tJ))
        - _lf(h(tj1 + tj2 + tJ) + 1)
        + _lf(h(tj1 + tm1))
        + _lf(h(tj1 - tm1))
        + _lf(h(tj2 + tm2))
        + _lf(h(tj2 - tm2))
        + _lf(h(tJ + tM))
        + _lf(h(tJ - tM))
    )
    k_min = max(0, h(tj2 - tJ - tm1), h(tj1 + tm2 - tJ))
    k_max = min(h(tj1 + tj2 - tJ), h(tj1 - tm1), h(tj2 + tm2))
    if k_max < k_min:
        return 0.0
    denom_args = [
        (
            k,
            h(tj1 + tj2 - tJ) - k,
            h(tj1 - tm1) - k,
            h(tj2 + tm2) - k,
            h(tJ - tj2 + tm1) + k,
            h(tJ - tj1 - tm2) + k,
        )
        for k in range(k_min, k_max + 1)
    ]
    logs = np.array([log_pref - sum(_lf(a) for a in args) for args in denom_args])
    signs = np.array([-1.0 if args[0] % 2 else 1.0 for args in denom_args])
    peak = logs.max()
    scaled = float(np.sum(signs * np.exp(logs - peak)))
    # heavy cancellation in the alternating sum: redo it in exact big-integer
    # arithmetic so values stay accurate up to 2j of several hundred
    if abs(scaled) < 1e-3 and len(denom_args) > 1:
        total = Fraction(0)
        for args in denom_args:
            denom = 1
            for a in args:
                denom *= math.factorial(a)
            total += Fraction(-1 if args[0] % 2 else 1, denom)
        if total == 0:
            return 0.0
        log_total = math.log(abs(total.numerator)) - math.log(total.denominator)
        sign = 1.0 if total > 0 else -1.0
        return sign * math.exp(log_pref + log_total)
    return float(np.exp(peak) * scaled)


def multipole_operator(j, l: int, m: int) -> np.ndarray:
    """Orthonormal irreducible tensor operator T_lm on the spin-j space.

    <j mu'| T_lm |j mu> = sqrt((2l+1)/(2j+1)) * <j mu; l m | j mu'>, indexed
    with mu = row - j ascending, so the layout matches the Dicke up-spin
    index.  They satisfy Tr(T_lm^dag T_l'm') = delta_ll' delta_mm'.
    """
    tj = _two(j, "j")
    if not (isinstance(l, (int, np.integer)) and isinstance(m, (int, np.integer))):
        raise ValueError("l and m must be integers")
    if not (0 <= l <= tj):
        raise ValueError(f"l = {l} out of range 0..2j = {tj}")
    if abs(m) > l:
        raise ValueError(f"|m| = {abs(m)} exceeds l = {l}")
    dim = tj + 1
    scale = math.sqrt((2 * l + 1) / dim)
    t = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        kp = k + m
        if 0 <= kp < dim:
            mu = k - tj / 2
            t[kp, k] = scale * clebsch_gordan(tj / 2, mu, l, m, tj / 2, mu + m)
    return t


@dataclass(frozen=True)
class MultipoleDecomposition:
    """Coefficients rho_lm = Tr(rho T_lm^dag) in the sphere (north = all-down) frame."""

    j: float
    coeffs: np.ndarray  # (2j+1, 4j+1), column index m + 2j

    @property
    def lmax(self) -> int:
        return self.coeffs.shape[0] - 1

    def coeff(self, l: int, m: int) -> complex:
        return complex(self.coeffs[l, m + self.lmax])


def multipole_decomposition(rho: np.ndarray) -> MultipoleDecomposition:
    """Expand a density matrix over the sphere-frame tensor operators.

    The sphere frame reverses the Dicke index (n = 0 at the north pole), so
    the coefficients are taken against the flipped matrix.
    """
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    if rho.shape != (dim, dim) or dim < 1:
        raise ValueError(f"need a square matrix, got {rho.shape}")
    lmax = dim - 1
    j = lmax / 2
    flipped = rho[::-1, ::-1]
    coeffs = np.zeros((lmax + 1, 2 * lmax + 1), dtype=complex)
    for l in range(lmax + 1):
        for m in range(-l, l + 1):
            coeffs[l, m + lmax] = np.vdot(multipole_operator(j, l, m), flipped)
    return MultipoleDecomposition(j, coeffs)


def _legendre_table(lmax: int, x: np.ndarray) -> np.ndarray:
    """Fully normalized associated Legendre values B[l, m, point], m >= 0."""
    x = np.asarray(x, dtype=float)
    sin = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    b = np.zeros((lmax + 1, lmax + 1, x.size))
    b[0, 0] = 1.0 / math.sqrt(4 * np.pi)
    for m in range(1, lmax + 1):
        b[m, m] = -math.sqrt((2 * m + 1) / (2 * m)) * sin * b[m - 1, m - 1]
    for m in range(lmax + 1):
        if m + 1 <= lmax:
            b[m + 1, m] = math.sqrt(2 * m + 3) * x * b[m, m]
        for l in range(m + 2, lmax + 1):
            a = math.sqrt((4 * l * l - 1) / (l * l - m * m))
            c = math.sqrt(((l - 1) ** 2 - m * m) / (4 * (l - 1) ** 2 - 1))
            b[l, m] = a * (x * b[l - 1, m] - c * b[l - 2, m])
    return b


def _evaluate(dec: MultipoleDecomposition, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Complex multipole sum at paired (theta, phi) points (last axis = points)."""
    lmax = dec.lmax
    table = _legendre_table(lmax, np.cos(theta))
    const = math.sqrt((lmax + 1) / (4 * np.pi))  # 2j+1 = lmax+1
    out = np.zeros(theta.shape, dtype=complex)
    for m in range(-lmax, lmax + 1):
        am = abs(m)
        cs = (-1.0) ** m if m < 0 else 1.0
        radial = np.tensordot(dec.coeffs[am:, m + lmax], cs * table[am:, am], axes=(0, 0))
        out += radial * np.exp(1j * m * phi)
    return const * out


def _validate_density(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"need a square density matrix, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-8:
        raise ValueError("density matrix is not Hermitian within 1e-8")
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise ValueError("density matrix trace differs from 1 beyond 1e-8")
    return rho


def wigner_function(rho: np.ndarray, grid: SphereGrid) -> np.ndarray:
    """Real Wigner field on the grid, shape (n_theta, n_phi).

    The imaginary residue of the multipole sum is checked against 1e-10 before
    being discarded; Hermitian input makes it vanish identically.
    """
    rho = _validate_density(rho)
    dec = multipole_decomposition(rho)
    theta = np.repeat(grid.theta, grid.n_phi)
    phi = np.tile(grid.phi, grid.n_theta)
    field = _evaluate(dec, theta, phi).reshape(grid.n_theta, grid.n_phi)
    residue = np.max(np.abs(field.imag))
    if residue >= 1e-10:
        raise InvariantViolation(f"imaginary residue {residue:.3e} >= 1e-10 in Wigner field")
    return field.real


def wigner_at(rho: np.ndarray, theta, phi) -> np.ndarray:
    """Wigner values at arbitrary (theta, phi) points (broadcast together)."""
    rho = _validate_density(rho)
    dec = multipole_decomposition(rho)
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    shape = theta.shape
    field = _evaluate(dec, theta.reshape(-1), phi.reshape(-1))
    residue = np.max(np.abs(field.imag)) if field.size else 0.0
    if residue >= 1e-10:
        raise InvariantViolation(f"imaginary residue {residue:.3e} >= 1e-10 in Wigner field")
    return field.real.reshape(shape)


def sphere_overlap(w1: np.ndarray, w2: np.ndarray, grid: SphereGrid) -> float:
    """Quadrature of W1*W2 over the sphere; equals (2j+1)/(4 pi) * Tr(rho1 rho2)."""
    expected = (grid.n_theta, grid.n_phi)
    if w1.shape != expected or w2.shape != expected:
        raise ValueError(f"grid mismatch: fields {w1.shape}, {w2.shape} vs grid {expected}")
    return float(np.sum(grid.weights * w1 * w2))


def overlap_constant(dim: int) -> float:
    """The fixed constant (2j+1)/(4 pi) relating sphere_overlap to Tr(rho1 rho2)."""
    return dim / (4 * np.pi)
