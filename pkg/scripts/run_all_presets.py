#!/usr/bin/env python3
"""Run every figure preset end to end and collect the CSVs under one directory.

Usage: python scripts/run_all_presets.py [OUT_DIR]

Each preset lands in its own subdirectory (fig1/ .. fig6/) together with its
manifest.  Takes a minute or two at default resolution.
"""

import subprocess
import sys
import time

PRESETS = {
    "fig1": ["dynamics", "--fig1"],
    "fig2": ["fidelity-scan", "--fig2"],
    "fig3": ["fidelity-scan", "--fig3"],
    "fig4": ["wigner", "--fig4"],
    "fig5": ["metrology", "--fig5"],
    "fig6": ["metrology", "--fig6"],
}


def main() -> int:
    base = sys.argv[1] if len(sys.argv) > 1 else "revival-out"
    overall = 0
    for name, args in PRESETS.items():
        started = time.time()
        cmd = [sys.executable, "-m", "bigspin.cli", *args, "--out", f"{base}/{name}"]
        code = subprocess.run(cmd).returncode
        print(f"{name}: exit {code} in {time.time() - started:.1f}s")
        overall = overall or code
    return overall


if __name__ == "__main__":
    sys.exit(main())
