"""Spherical Wigner surface, diverging colormap centered at zero."""

import sys

import matplotlib.pyplot as plt
import numpy as np
from matplotlib import cm
from matplotlib.colors import Normalize

from .common import read_table, save


def render(csv_path: str, out_path: str):
    table = read_table(csv_path, required=("theta", "phi", "w"))
    theta = np.unique(table["theta"])
    phi = np.unique(table["phi"])
    w = np.full((theta.size, phi.size), np.nan)
    ti = {v: i for i, v in enumerate(theta)}
    pi_ = {v: i for i, v in enumerate(phi)}
    for th, ph, val in zip(table["theta"], table["phi"], table["w"]):
        w[ti[th], pi_[ph]] = val

    # close the seam at phi = 2 pi
    phi_c = np.append(phi, 2 * np.pi)
    w_c = np.column_stack([w, w[:, 0]])
    th_grid, ph_grid = np.meshgrid(theta, phi_c, indexing="ij")
    x = np.sin(th_grid) * np.cos(ph_grid)
    y = np.sin(th_grid) * np.sin(ph_grid)
    z = np.cos(th_grid)

    amp = float(np.nanmax(np.abs(w_c))) or 1.0
    norm = Normalize(vmin=-amp, vmax=amp)
    colors = cm.RdBu_r(norm(w_c))

    fig = plt.figure(figsize=(5, 5))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(x, y, z, facecolors=colors, rstride=1, cstride=1,
                    linewidth=0, antialiased=False, shade=False)
    ax.set_box_aspect((1, 1, 1))
    ax.set_axis_off()
    n = table.meta.get("N", "?")
    ax.set_title(f"Wigner function of the big spin, N = {n}", fontsize=10)
    mappable = cm.ScalarMappable(norm=norm, cmap="RdBu_r")
    fig.colorbar(mappable, ax=ax, shrink=0.6, label=r"$W(\theta,\phi)$")
    fig.tight_layout()
    save(fig, out_path)
    return fig


def main(argv=None) -> int:
    args = argv if argv is not None else sys.argv[1:]
    if len(args) != 2:
        print("usage: fig4 INPUT_CSV OUTPUT_IMAGE", file=sys.stderr)
        return 2
    try:
        render(*args)
    except (FileNotFoundError, ValueError) as exc:
        print(f"fig4: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
