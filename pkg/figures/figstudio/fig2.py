"""Cat-state fidelity surface over (|zeta|^2/N, N) as a heatmap."""

import sys

import matplotlib.pyplot as plt
import numpy as np

from .common import read_table, save


def render(csv_path: str, out_path: str):
    table = read_table(csv_path, required=("N", "zeta2_over_N", "fidelity"))
    n_vals = np.unique(table["N"])
    x_vals = np.unique(table["zeta2_over_N"])
    grid = np.full((n_vals.size, x_vals.size), np.nan)
    ni = {v: i for i, v in enumerate(n_vals)}
    xi = {v: i for i, v in enumerate(x_vals)}
    for n, x, f in zip(table["N"], table["zeta2_over_N"], table["fidelity"]):
        grid[ni[n], xi[x]] = f
    fig, ax = plt.subplots(figsize=(6, 4))
    mesh = ax.pcolormesh(x_vals, n_vals, grid, cmap="jet", vmin=0.0, vmax=1.0,
                         shading="nearest")
    fig.colorbar(mesh, ax=ax, label="fidelity at $t_0$")
    ax.set_xlabel(r"$|\zeta|^2/N$")
    ax.set_ylabel(r"$N$")
    ax.set_title("Fidelity of the reduced big spin to the cat state")
    fig.tight_layout()
    save(fig, out_path)
    return fig


def main(argv=None) -> int:
    args = argv if argv is not None else sys.argv[1:]
    if len(args) != 2:
        print("usage: fig2 INPUT_CSV OUTPUT_IMAGE", file=sys.stderr)
        return 2
    try:
        render(*args)
    except (FileNotFoundError, ValueError) as exc:
        print(f"fig2: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
