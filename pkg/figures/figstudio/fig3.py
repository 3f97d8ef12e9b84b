"""Fidelity against time, one panel per N, with a dot at t0."""

import sys

import matplotlib.pyplot as plt
import numpy as np

from .common import read_table, save


def render(csv_path: str, out_path: str):
    table = read_table(csv_path, required=("N", "t", "t_over_t0", "fidelity"))
    n_vals = list(np.unique(table["N"]).astype(int))
    ncols = 2
    nrows = (len(n_vals) + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(7, 2.6 * nrows), squeeze=False)
    for ax, n in zip(axes.flat, n_vals):
        sel = table["N"] == n
        t, rel, f = table["t"][sel], table["t_over_t0"][sel], table["fidelity"][sel]
        ax.plot(t, f, lw=0.7, color="royalblue")
        at_t0 = np.argmin(np.abs(rel - 1.0))
        ax.plot(t[at_t0], f[at_t0], "ko", ms=5)
        ax.set_title(f"N = {n}", fontsize=9)
        ax.set_xlabel(r"$t$  [$1/\lambda$]", fontsize=8)
        ax.set_ylabel("fidelity", fontsize=8)
        ax.set_ylim(0, 1)
    for ax in axes.flat[len(n_vals):]:
        fig.delaxes(ax)
    fig.tight_layout()
    save(fig, out_path)
    return fig


def main(argv=None) -> int:
    args = argv if argv is not None else sys.argv[1:]
    if len(args) != 2:
        print("usage: fig3 INPUT_CSV OUTPUT_IMAGE", file=sys.stderr)
        return 2
    try:
        render(*args)
    except (FileNotFoundError, ValueError) as exc:
        print(f"fig3: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
