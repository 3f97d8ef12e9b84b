"""Command-line driver: figure presets, sweeps, deterministic CSV + manifest output.

Subcommands map onto the package's figure outputs:

    dynamics        collapse-revival time series (sigma_z, qubit entropy)
    fidelity-scan   cat fidelity surface over (N, |zeta|^2/N) or fidelity vs time
    wigner          spherical Wigner field of the reduced big spin at t0
    metrology       N/F precision surface and the fidelity/precision cross-section

Configuration comes from an INI file (--config) with sections [model], [grid],
[run]; any CLI flag overrides the file.  Unknown sections or keys are
rejected.  Output CSVs carry '#'-prefixed metadata (config hash, units), one
header row, and 17-significant-digit floats in a fixed row order, so repeated
runs are byte-identical regardless of --workers.

Exit codes: 0 success, 2 configuration error, 3 partial sweep (failed cells
recorded in the manifest), 4 numerical invariant violation.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .cat import fidelity_surface, fidelity_vs_time, initial_composite, reduced_bigspin_at
from .dicke import fock_coherent
from .dynamics import TimeGrid, attractor_time, evolve
from .errors import InvariantViolation
from .hamiltonians import ModelParams, composite_from_parts
from .metrology import cross_section, precision_surface
from .sweeps import format_float, write_csv
from .wigner import SphereGrid, wigner_function

_CONFIG_SCHEMA = {
    "model": {"n": int, "zeta2": float, "omega": float, "big_omega": float,
              "lam": float, "cutoff": int},
    "grid": {"t_start": float, "t_end": float, "samples": int, "n_list": str,
             "x_grid": str, "x": float, "n_theta": int, "n_phi": int,
             "n_min": int, "n_max": int},
    "run": {"workers": int, "out": str, "oracle": bool, "jc": bool},
}

_UNITS = "time in 1/lam; omega, big_omega in units of lam; W in 1/steradian"


class ConfigError(ValueError):
    pass


def _parse_int_list(text: str) -> list[int]:
    """Comma list '12,40,70' or inclusive range 'lo:hi:step'."""
    text = text.strip()
    if ":" in text:
        lo, hi, step = (int(p) for p in text.split(":"))
        if step < 1 or hi < lo:
            raise ConfigError(f"bad integer range {text!r}")
        return list(range(lo, hi + 1, step))
    return [int(p) for p in text.split(",") if p.strip()]


def _parse_float_grid(text: str) -> list[float]:
    """Comma list of floats or 'lo:hi:count' for a uniform grid."""
    text = text.strip()
    if ":" in text:
        lo, hi, count = text.split(":")
        count = int(count)
        if count < 1:
            raise ConfigError(f"bad grid spec {text!r}")
        return [float(v) for v in np.linspace(float(lo), float(hi), count)]
    return [float(p) for p in text.split(",") if p.strip()]


def _load_config(path: str | None) -> dict:
    """Flat dict of validated config-file values; unknown keys rejected."""
    if path is None:
        return {}
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config: {exc}") from exc
    out: dict = {}
    for section in parser.sections():
        if section not in _CONFIG_SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        for key, raw in parser.items(section):
            if key not in _CONFIG_SCHEMA[section]:
                raise ConfigError(f"unknown config key '{key}' in [{section}]")
            typ = _CONFIG_SCHEMA[section][key]
            try:
                out[key] = parser.getboolean(section, key) if typ is bool else typ(raw)
            except ValueError as exc:
                raise ConfigError(f"bad value for {key}: {raw!r}") from exc
    return out


def _setting(args, cfg: dict, key: str, default):
    """Priority: CLI flag > config file > default."""
    val = getattr(args, key, None)
    if val is not None:
        return val
    if key in cfg:
        return cfg[key]
    return default


def _config_hash(physics: dict) -> str:
    """Hash of the physics-relevant settings only; workers/out never enter."""
    canon = "\n".join(f"{k}={physics[k]}" for k in sorted(physics))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


class _Run:
    """Collects output files and cell statuses, then writes the manifest.

    CSVs are staged and flushed together at the end of the command, so an
    error part-way through a multi-file run leaves no partial outputs.
    """

    def __init__(self, command: str, out_dir: str, config_hash: str):
        self.command = command
        self.out_dir = out_dir
        self.config_hash = config_hash
        self.started = time.time()
        self.files: list[str] = []
        self.cells: list[dict] = []
        self._staged: list[tuple[str, list, list, dict]] = []
        os.makedirs(out_dir, exist_ok=True)

    def write_csv(self, name: str, columns, rows, extra_meta: dict | None = None):
        meta = {"config_hash": self.config_hash, "generator": f"revival {self.command}",
                "units": _UNITS, "code_version": __version__}
        meta.update(extra_meta or {})
        self._staged.append((name, list(columns), list(rows), meta))

    def _flush(self):
        for name, columns, rows, meta in self._staged:
            tmp = os.path.join(self.out_dir, name + ".tmp")
            try:
                write_csv(tmp, columns, rows, meta)
                os.replace(tmp, os.path.join(self.out_dir, name))
            except BaseException:
                if os.path.exists(tmp):
                    os.remove(tmp)
                raise
            self.files.append(name)
        self._staged.clear()

    def record_grid(self, grid):
        for (i, msg) in grid.failed_cells:
            r, c = divmod(i, len(grid.cols))
            self.cells.append({"row": format_float(grid.rows[r]),
                               "col": format_float(grid.cols[c]), "error": msg})

    def finish(self) -> int:
        self._flush()
        manifest = {
            "command": self.command,
            "config_hash": self.config_hash,
            "code_version": __version__,
            "wall_time_s": round(time.time() - self.started, 3),
            "failed_cells": self.cells,
            "files": [{"name": f, "sha256": _sha256(os.path.join(self.out_dir, f))}
                      for f in sorted(self.files)],
        }
        with open(os.path.join(self.out_dir, f"manifest_{self.command}.json"), "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
        return 3 if self.cells else 0


def _out_dir(args, cfg) -> str:
    return _setting(args, cfg, "out", None) or os.environ.get("REVIVAL_OUT") or "revival-out"


def _oracle_check_dynamics(params, psi0, grid, traj):
    ref = evolve(params, psi0, grid, method="dense", lean=True)
    err = float(np.max(np.abs(ref.sigma_z - traj.sigma_z)))
    if err > 1e-10:
        raise InvariantViolation(f"block vs dense sigma_z mismatch {err:.3e} > 1e-10")


def _cmd_dynamics(args, cfg) -> int:
    lam = _setting(args, cfg, "lam", 1.0)
    omega = _setting(args, cfg, "omega", 1.0)
    big_omega = _setting(args, cfg, "big_omega", 1.0)
    n = int(_setting(args, cfg, "n", 170))
    zeta2 = float(_setting(args, cfg, "zeta2", 16.0))
    zeta = np.sqrt(zeta2)
    cutoff = int(_setting(args, cfg, "cutoff", 400))
    t0 = attractor_time(n, zeta, lam)
    t_start = float(_setting(args, cfg, "t_start", 0.0))
    t_end = float(_setting(args, cfg, "t_end", 2.6 * t0))
    samples = int(_setting(args, cfg, "samples", 3001))
    jc_only = bool(_setting(args, cfg, "jc", False))
    oracle = bool(_setting(args, cfg, "oracle", False))
    grid = TimeGrid(t_start, t_end, samples)

    physics = dict(n=n, zeta2=zeta2, omega=omega, big_omega=big_omega, lam=lam,
                   cutoff=cutoff, t_start=t_start, t_end=t_end, samples=samples,
                   jc=jc_only, fig1=bool(args.fig1))
    run = _Run("dynamics", _out_dir(args, cfg), _config_hash(physics))

    def spin_rows():
        params = ModelParams(omega=omega, Omega=big_omega, lam=lam, N=n)
        psi0 = initial_composite(n, zeta)
        traj = evolve(params, psi0, grid, lean=True)
        if oracle:
            _oracle_check_dynamics(params, psi0, grid, traj)
        return zip(traj.times, traj.sigma_z, traj.qubit_linear_entropy)

    def jc_rows():
        params = ModelParams(omega=omega, Omega=big_omega, lam=lam, cutoff=cutoff)
        psi0 = composite_from_parts(np.array([1.0, 0.0]), fock_coherent(zeta, cutoff).amplitudes)
        traj = evolve(params, psi0, grid, lean=True)
        if oracle:
            _oracle_check_dynamics(params, psi0, grid, traj)
        return zip(traj.times, traj.sigma_z, traj.qubit_linear_entropy)

    cols = ["t", "sigma_z", "qubit_linear_entropy"]
    meta = {"N": n, "zeta2": zeta2, "lam": lam, "t0": format_float(t0)}
    if args.fig1:
        run.write_csv("dynamics_spin.csv", cols, spin_rows(), meta)
        run.write_csv("dynamics_jc.csv", cols, jc_rows(), {**meta, "cutoff": cutoff})
    elif jc_only:
        run.write_csv("dynamics_jc.csv", cols, jc_rows(), {**meta, "cutoff": cutoff})
    else:
        run.write_csv("dynamics_spin.csv", cols, spin_rows(), meta)
    return run.finish()


def _surface_oracle(grid_obj, lam, omega, big_omega):
    from .cat import fidelity_to_cat

    for i, nval in enumerate(grid_obj.rows):
        for j, xval in enumerate(grid_obj.cols):
            if not np.isfinite(grid_obj.values[i, j]):
                continue
            ref = fidelity_to_cat(int(nval), np.sqrt(xval * nval), lam, omega,
                                  big_omega, method="dense")
            if abs(ref - grid_obj.values[i, j]) > 1e-8:
                raise InvariantViolation(
                    f"fidelity cell ({nval}, {xval}) block vs dense mismatch"
                )


def _cmd_fidelity_scan(args, cfg) -> int:
    lam = _setting(args, cfg, "lam", 1.0)
    omega = _setting(args, cfg, "omega", 1.0)
    big_omega = _setting(args, cfg, "big_omega", 1.0)
    workers = int(_setting(args, cfg, "workers", 1))
    if args.fig3:
        n_list = _parse_int_list(_setting(args, cfg, "n_list", "12,40,70,100"))
        zeta2 = float(_setting(args, cfg, "zeta2", 6.0))
        samples = int(_setting(args, cfg, "samples", 2001))
        physics = dict(mode="fig3", n_list=n_list, zeta2=zeta2, samples=samples,
                       lam=lam, omega=omega, big_omega=big_omega)
        run = _Run("fidelity-scan", _out_dir(args, cfg), _config_hash(physics))
        rows = []
        zeta = np.sqrt(zeta2)
        for n in n_list:
            t0 = attractor_time(n, zeta, lam)
            tgrid = TimeGrid(0.0, 2.0 * t0, samples)
            series = fidelity_vs_time(n, zeta, tgrid, lam, omega, big_omega)
            rows.extend((n, t, t / t0, f) for t, f in zip(tgrid.times, series))
        run.write_csv("fidelity_vs_time.csv", ["N", "t", "t_over_t0", "fidelity"],
                      rows, {"zeta2": zeta2, "lam": lam})
        return run.finish()

    n_list = _parse_int_list(_setting(args, cfg, "n_list", "5:100:5"))
    x_grid = _parse_float_grid(_setting(args, cfg, "x_grid", "0:1:51"))
    physics = dict(mode="fig2", n_list=n_list, x_grid=[format_float(x) for x in x_grid],
                   lam=lam, omega=omega, big_omega=big_omega)
    run = _Run("fidelity-scan", _out_dir(args, cfg), _config_hash(physics))
    grid = fidelity_surface(n_list, x_grid, lam, omega, big_omega, workers=workers)
    if _setting(args, cfg, "oracle", False):
        _surface_oracle(grid, lam, omega, big_omega)
    run.record_grid(grid)
    run.write_csv("fidelity_surface.csv", ["N", "zeta2_over_N", "fidelity"],
                  grid.iter_cells(), {"lam": lam})
    return run.finish()


_WIGNER_PANELS = ((12, 6.0), (20, 3.2), (40, 6.4))  # (N, |zeta|^2) presets


def _cmd_wigner(args, cfg) -> int:
    lam = _setting(args, cfg, "lam", 1.0)
    omega = _setting(args, cfg, "omega", 1.0)
    big_omega = _setting(args, cfg, "big_omega", 1.0)
    if args.fig4:
        panels = list(_WIGNER_PANELS)
    else:
        n = int(_setting(args, cfg, "n", 40))
        x = _setting(args, cfg, "x", None)
        zeta2 = float(x * n) if x is not None else float(_setting(args, cfg, "zeta2", 6.4))
        panels = [(n, zeta2)]
    physics = dict(panels=panels, lam=lam, omega=omega, big_omega=big_omega,
                   n_theta=_setting(args, cfg, "n_theta", None),
                   n_phi=_setting(args, cfg, "n_phi", None))
    run = _Run("wigner", _out_dir(args, cfg), _config_hash(physics))
    for n, zeta2 in panels:
        zeta = np.sqrt(zeta2)
        t0 = attractor_time(n, zeta, lam)
        rho = reduced_bigspin_at(n, zeta, lam, t0, omega, big_omega)
        sgrid = SphereGrid(int(_setting(args, cfg, "n_theta", 2 * n + 2)),
                           int(_setting(args, cfg, "n_phi", 2 * n + 2)))
        field = wigner_function(rho, sgrid)
        integral = float(np.sum(sgrid.weights * field))
        if abs(integral - 1.0) > 1e-6:
            raise InvariantViolation(f"Wigner integral {integral} deviates from 1")
        rows = ((th, ph, field[i, j]) for i, th in enumerate(sgrid.theta)
                for j, ph in enumerate(sgrid.phi))
        run.write_csv(f"wigner_N{n}.csv", ["theta", "phi", "w"], rows,
                      {"N": n, "zeta2": zeta2, "lam": lam, "t0": format_float(t0)})
    return run.finish()


def _cmd_metrology(args, cfg) -> int:
    lam = _setting(args, cfg, "lam", 1.0)
    omega = _setting(args, cfg, "omega", 1.0)
    big_omega = _setting(args, cfg, "big_omega", 1.0)
    workers = int(_setting(args, cfg, "workers", 1))
    if args.fig6:
        n_min = int(_setting(args, cfg, "n_min", 5))
        n_max = int(_setting(args, cfg, "n_max", 100))
        x = float(_setting(args, cfg, "x", 0.5))
        physics = dict(mode="fig6", n_min=n_min, n_max=n_max, x=x, lam=lam,
                       omega=omega, big_omega=big_omega)
        run = _Run("metrology", _out_dir(args, cfg), _config_hash(physics))
        xs = cross_section(range(n_min, n_max + 1), x, lam, omega, big_omega)
        rows = zip(xs.N, xs.fidelity, xs.n_over_f)
        run.write_csv("cross_section.csv", ["N", "fidelity", "n_over_f"], rows,
                      {"x": x, "lam": lam, "zeta_convention": xs.meta["zeta_convention"]})
        return run.finish()

    n_list = _parse_int_list(_setting(args, cfg, "n_list", "5:100:5"))
    x_grid = _parse_float_grid(_setting(args, cfg, "x_grid", "0:1:51"))
    physics = dict(mode="fig5", n_list=n_list, x_grid=[format_float(x) for x in x_grid],
                   lam=lam)
    run = _Run("metrology", _out_dir(args, cfg), _config_hash(physics))
    grid = precision_surface(n_list, x_grid, lam, workers=workers)
    if _setting(args, cfg, "oracle", False):
        from .cat import CatSpec, cat_state
        from .metrology import qfi_jy_oracle

        for i, nval in enumerate(grid.rows):
            for j, xval in enumerate(grid.cols):
                if not np.isfinite(grid.values[i, j]):
                    continue
                ref = int(nval) / qfi_jy_oracle(cat_state(CatSpec(int(nval), np.sqrt(xval * nval), lam)))
                if abs(ref - grid.values[i, j]) > 1e-8:
                    raise InvariantViolation(f"qfi cell ({nval}, {xval}) dual-path mismatch")
    run.record_grid(grid)
    rows = ((n, x, v, 1.0 / n) for n, x, v in grid.iter_cells())
    run.write_csv("precision_surface.csv", ["N", "zeta2_over_N", "n_over_f", "heisenberg_limit"],
                  rows, {"lam": lam})
    return run.finish()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revival",
        description="Qubit-big-spin collapse and revival: dynamics, cat states, "
                    "Wigner fields and metrology sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="INI config file")
        p.add_argument("--out", help="output directory (or env REVIVAL_OUT)")
        p.add_argument("--workers", type=int, help="worker processes for sweeps")
        p.add_argument("--oracle", action="store_true", default=None,
                       help="enable dense-diagonalization cross-checks")
        p.add_argument("--lam", type=float, help="coupling strength")
        p.add_argument("--omega", type=float, help="big-spin/field splitting")
        p.add_argument("--big-omega", dest="big_omega", type=float, help="qubit splitting")

    p = sub.add_parser("dynamics", help="collapse-revival time series")
    common(p)
    p.add_argument("--fig1", action="store_true",
                   help="preset: N=170, |zeta|^2=16 series plus matched field-mode reference")
    p.add_argument("--jc", action="store_true", default=None,
                   help="field-mode (truncated boson) run only")
    p.add_argument("--n", type=int)
    p.add_argument("--zeta2", type=float, help="|zeta|^2 of the initial coherent state")
    p.add_argument("--cutoff", type=int, help="field truncation for --jc")
    p.add_argument("--t-start", dest="t_start", type=float)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--samples", type=int)

    p = sub.add_parser("fidelity-scan", help="cat fidelity surface or time series")
    common(p)
    p.add_argument("--fig2", action="store_true", help="preset: surface over (N, |zeta|^2/N)")
    p.add_argument("--fig3", action="store_true", help="preset: fidelity vs time at |zeta|^2=6")
    p.add_argument("--n-list", dest="n_list", help="'12,40,70,100' or 'lo:hi:step'")
    p.add_argument("--x-grid", dest="x_grid", help="'lo:hi:count' or comma list")
    p.add_argument("--zeta2", type=float)
    p.add_argument("--samples", type=int)

    p = sub.add_parser("wigner", help="Wigner field of the reduced big spin at t0")
    common(p)
    p.add_argument("--fig4", action="store_true",
                   help="preset: panels (N=12,|z|^2=6), (N=20,x=0.16), (N=40,x=0.16)")
    p.add_argument("--n", type=int)
    p.add_argument("--zeta2", type=float)
    p.add_argument("--x", type=float, help="|zeta|^2/N (alternative to --zeta2)")
    p.add_argument("--n-theta", dest="n_theta", type=int)
    p.add_argument("--n-phi", dest="n_phi", type=int)

    p = sub.add_parser("metrology", help="N/F surface and fidelity/precision cross-section")
    common(p)
    p.add_argument("--fig5", action="store_true", help="preset: N/F surface")
    p.add_argument("--fig6", action="store_true", help="preset: cross-section at x=0.5")
    p.add_argument("--n-list", dest="n_list")
    p.add_argument("--x-grid", dest="x_grid")
    p.add_argument("--x", type=float)
    p.add_argument("--n-min", dest="n_min", type=int)
    p.add_argument("--n-max", dest="n_max", type=int)
    return parser


_DISPATCH = {
    "dynamics": _cmd_dynamics,
    "fidelity-scan": _cmd_fidelity_scan,
    "wigner": _cmd_wigner,
    "metrology": _cmd_metrology,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args.config)
        return _DISPATCH[args.command](args, cfg)
    except (ConfigError, ValueError) as exc:
        print(f"revival: configuration error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"revival: numerical invariant violation: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
