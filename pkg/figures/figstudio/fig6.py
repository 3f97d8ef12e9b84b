"""Cross-section at fixed |zeta|^2/N: fidelity (upper) and N/F (lower) vs N."""

import sys

import matplotlib.pyplot as plt

from .common import read_table, save


def render(csv_path: str, out_path: str):
    table = read_table(csv_path, required=("N", "fidelity", "n_over_f"))
    fig, ax_f = plt.subplots(figsize=(6.5, 3.6))
    ax_f.plot(table["N"], table["fidelity"], "-o", ms=3, color="royalblue",
              label="fidelity")
    ax_f.set_xlabel(r"$N$")
    ax_f.set_ylabel("fidelity at $t_0$", color="royalblue")
    ax_f.set_ylim(0, 1.05)
    ax_p = ax_f.twinx()
    ax_p.plot(table["N"], table["n_over_f"], "-s", ms=3, color="seagreen",
              label=r"$N/\mathcal{F}$")
    ax_p.set_ylabel(r"$N/\mathcal{F}$", color="seagreen")
    ax_p.set_ylim(bottom=0)
    x = table.meta.get("x", "?")
    ax_f.set_title(f"Fidelity peaks against precision troughs at $|\\zeta|^2/N$ = {x}")
    fig.tight_layout()
    save(fig, out_path)
    return fig


def main(argv=None) -> int:
    args = argv if argv is not None else sys.argv[1:]
    if len(args) != 2:
        print("usage: fig6 INPUT_CSV OUTPUT_IMAGE", file=sys.stderr)
        return 2
    try:
        render(*args)
    except (FileNotFoundError, ValueError) as exc:
        print(f"fig6: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
