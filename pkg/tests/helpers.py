"""Shared helpers for structural assertions on sweep series and Wigner fields."""

from collections import deque

import numpy as np


def local_maxima(values, include_edges=True):
    """Indices of local maxima; edges count when they beat their neighbor."""
    v = np.asarray(values)
    idx = [i for i in range(1, v.size - 1) if v[i] > v[i - 1] and v[i] > v[i + 1]]
    if include_edges:
        if v.size > 1 and v[0] > v[1]:
            idx.insert(0, 0)
        if v.size > 1 and v[-1] > v[-2]:
            idx.append(v.size - 1)
    return idx


def local_minima(values, include_edges=True):
    return local_maxima(-np.asarray(values), include_edges)


def connected_components(mask):
    """Label 4-connected True regions on a (theta, phi) grid; phi wraps around."""
    labels = np.zeros(mask.shape, dtype=int)
    current = 0
    for i in range(mask.shape[0]):
        for j in range(mask.shape[1]):
            if mask[i, j] and labels[i, j] == 0:
                current += 1
                queue = deque([(i, j)])
                labels[i, j] = current
                while queue:
                    a, b = queue.popleft()
                    for da, db in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                        na, nb = a + da, (b + db) % mask.shape[1]
                        if 0 <= na < mask.shape[0] and mask[na, nb] and labels[na, nb] == 0:
                            labels[na, nb] = current
                            queue.append((na, nb))
    return labels, current


def count_sign_changes(values):
    signs = np.sign(values)
    signs = signs[signs != 0]
    return int(np.sum(signs[1:] * signs[:-1] < 0))


def branch_peak_nodes(n_spins, zeta, grid, lam=1.0):
    """Wigner argmax node of each conditionally evolved branch at t0.

    Each branch is a pure state with a single coherent-like lobe, so its
    argmax marks where the corresponding cat lobe must sit.
    """
    from bigspin.cat import CatSpec, conditional_evolution
    from bigspin.dicke import SpinCoherentParams, spin_coherent
    from bigspin.wigner import wigner_function

    spec = CatSpec(n_spins, zeta, lam)
    initial = spin_coherent(SpinCoherentParams(n_spins, zeta, scaled=True))
    nodes = []
    for sign in ("+", "-"):
        branch = conditional_evolution(sign, spec.t0, initial, lam)
        w = wigner_function(np.outer(branch.amplitudes, branch.amplitudes.conj()), grid)
        nodes.append(np.unravel_index(np.argmax(w), w.shape))
    return nodes


def cat_lobe_structure(rho, n_spins, zeta, lam=1.0, threshold=0.3, n_arc=400):
    """Locate the two branch lobes of a cat's Wigner field and probe its fringes.

    Returns (lobes_disjoint, sign_changes): whether the two branch-peak
    locations fall in disjoint positive components of {W > threshold*max},
    and the number of sign changes of W along the transverse great-circle arc
    (the meridian through the azimuthal midpoint, where the interference
    stripes between the lobes are crossed).
    """
    from bigspin.wigner import SphereGrid, wigner_at, wigner_function

    grid = SphereGrid(2 * n_spins + 2, 2 * n_spins + 2)
    field = wigner_function(rho, grid)
    labels, _ = connected_components(field > threshold * field.max())

    def label_near(node):
        # the cat lobe peak can sit a node or two off the branch peak
        i0, j0 = node
        best_label, best_value = 0, -np.inf
        for di in (-2, -1, 0, 1, 2):
            for dj in (-2, -1, 0, 1, 2):
                i, j = i0 + di, (j0 + dj) % grid.n_phi
                if 0 <= i < grid.n_theta and labels[i, j] != 0 and field[i, j] > best_value:
                    best_label, best_value = labels[i, j], field[i, j]
        return best_label

    peaks = branch_peak_nodes(n_spins, zeta, grid, lam)
    l1, l2 = (label_near(node) for node in peaks)
    lobes_disjoint = l1 != 0 and l2 != 0 and l1 != l2

    (i1, j1), (i2, j2) = peaks
    phi_mid = np.angle(np.exp(1j * grid.phi[j1]) + np.exp(1j * grid.phi[j2]))
    thetas = np.linspace(0.02, np.pi - 0.02, n_arc)
    arc = wigner_at(rho, thetas, np.full_like(thetas, phi_mid))
    return lobes_disjoint, count_sign_changes(arc)
