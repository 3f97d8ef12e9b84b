"""Precision N/F against |zeta|^2/N per N, with the 1/N reference lines."""

import sys

import matplotlib.pyplot as plt
import numpy as np
from matplotlib import cm

from .common import read_table, save


def render(csv_path: str, out_path: str):
    table = read_table(
        csv_path, required=("N", "zeta2_over_N", "n_over_f", "heisenberg_limit")
    )
    n_vals = np.unique(table["N"])
    fig, ax = plt.subplots(figsize=(6.5, 4))
    shades = cm.viridis(np.linspace(0.1, 0.9, n_vals.size))
    for color, n in zip(shades, n_vals):
        sel = table["N"] == n
        order = np.argsort(table["zeta2_over_N"][sel])
        x = table["zeta2_over_N"][sel][order]
        ax.plot(x, table["n_over_f"][sel][order], color=color, lw=1.0,
                label=f"N = {int(n)}")
        ref = table["heisenberg_limit"][sel][order]
        ax.plot(x, ref, color="black", lw=0.5, alpha=0.5, gid="heisenberg")
    ax.set_yscale("log")
    ax.set_xlabel(r"$|\zeta|^2/N$")
    ax.set_ylabel(r"$N/\mathcal{F}$")
    ax.set_title("Phase-estimation precision of the cat state "
                 "(black grid: Heisenberg limit $1/N$)")
    if n_vals.size <= 10:
        ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    save(fig, out_path)
    return fig


def main(argv=None) -> int:
    args = argv if argv is not None else sys.argv[1:]
    if len(args) != 2:
        print("usage: fig5 INPUT_CSV OUTPUT_IMAGE", file=sys.stderr)
        return 2
    try:
        render(*args)
    except (FileNotFoundError, ValueError) as exc:
        print(f"fig5: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
