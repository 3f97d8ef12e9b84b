"""Collapse-and-revival time series: sigma_z solid, qubit entropy dashed."""

import sys

import matplotlib.pyplot as plt

from .common import read_table, save


def render(csv_path: str, out_path: str):
    table = read_table(csv_path, required=("t", "sigma_z", "qubit_linear_entropy"))
    fig, ax = plt.subplots(figsize=(7, 3.2))
    ax.plot(table["t"], table["sigma_z"], "-", color="crimson", lw=0.8,
            label=r"$\langle\sigma_z\rangle$")
    ax.plot(table["t"], table["qubit_linear_entropy"], "--", color="seagreen",
            lw=1.2, label="qubit linear entropy")
    ax.set_xlabel(r"$t$  [$1/\lambda$]")
    ax.set_ylabel("dimensionless")
    n = table.meta.get("N", table.meta.get("cutoff", "?"))
    ax.set_title(f"Collapse and revival, N = {n}, $|\\zeta|^2$ = {table.meta.get('zeta2', '?')}")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_ylim(-1.05, 1.05)
    fig.tight_layout()
    save(fig, out_path)
    return fig


def main(argv=None) -> int:
    args = argv if argv is not None else sys.argv[1:]
    if len(args) != 2:
        print("usage: fig1 INPUT_CSV OUTPUT_IMAGE", file=sys.stderr)
        return 2
    try:
        render(*args)
    except (FileNotFoundError, ValueError) as exc:
        print(f"fig1: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
