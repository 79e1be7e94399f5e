"""Command-line front end: config parsing, run orchestration, file output.

Subcommands: solve (single point), scan (one axis), converge (orbital-count
sweep), oracle (hard-core limit quantities), table1 (coupling strengths from
physical inputs).  Exit codes: 0 ok, 1 validation, 2 solver failure, 3 I/O.
"""

import argparse
import hashlib
import json
import multiprocessing
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict

import numpy as np

from . import __version__
from .grid import TrapSpec, build_potential, make_grid, solve_1p
from .interaction import InteractionSpec, two_body_tensor
from .fock import enumerate_basis
from .observables import (
    displacement,
    one_body_density,
    tg_oracle,
    two_body_density,
    write_occupations_csv,
    write_profile_csv,
)
from .solver import SolverError, convergence_sweep, ground_state_krylov, relax_imaginary_time
from .units import PhysicalParams, ResonanceError, coupling_strength_1d

OUT_DIR_ENV = "FEWBOSON_OUT"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_SOLVER = 2
EXIT_IO = 3

DEFAULT_SCAN_VALUES = np.geomspace(0.1, 200.0, 16)

KNOWN_OUTPUTS = ("energy", "rho1", "rho2", "occupations", "displacement")
SCAN_AXES = ("g0", "alpha", "h", "n")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    N: int
    n: int
    g0: float = 0.0
    alpha: float = 0.0
    L: float = 1.0
    sigma: float = 0.05
    h: float = 0.0
    w: float = 0.5
    grid_x_max: float = 8.0
    grid_points: int = 1024
    solver_method: str = "krylov"
    solver_tol: float = 1e-10
    solver_dtau: float = 0.1
    scan_axis: str | None = None
    scan_values: list = field(default_factory=list)
    outputs: list = field(default_factory=lambda: ["energy"])

    def trap(self) -> TrapSpec:
        return TrapSpec(self.h, self.w)

    def interaction(self) -> InteractionSpec:
        return InteractionSpec(self.g0, self.alpha, self.L, self.sigma)


_KEYS = {
    "N": ("N", int),
    "n": ("n", int),
    "g0": ("g0", float),
    "alpha": ("alpha", float),
    "L": ("L", float),
    "sigma": ("sigma", float),
    "h": ("h", float),
    "w": ("w", float),
    "grid.x_max": ("grid_x_max", float),
    "grid.points": ("grid_points", int),
    "solver.method": ("solver_method", str),
    "solver.tol": ("solver_tol", float),
    "solver.dtau": ("solver_dtau", float),
    "scan.axis": ("scan_axis", str),
    "scan.values": ("scan_values", None),
    "outputs": ("outputs", None),
}


def parse_config(text: str) -> RunConfig:
    """Parse a flat key = value document (one assignment per line, '#'
    comments, dot-paths for nesting) into a validated RunConfig."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        raw[key] = (lineno, value)

    for required in ("N", "n"):
        if required not in raw:
            raise ConfigError(f"missing required key {required!r}")

    kwargs = {}
    for key, (lineno, value) in raw.items():
        attr, conv = _KEYS[key]
        if key == "scan.values":
            try:
                kwargs[attr] = [float(v) for v in value.split(",") if v.strip()]
            except ValueError as exc:
                raise ConfigError(f"{key}: malformed number in {value!r}") from exc
        elif key == "outputs":
            items = [v.strip() for v in value.split(",") if v.strip()]
            for item in items:
                if item not in KNOWN_OUTPUTS:
                    raise ConfigError(f"outputs: unknown artifact {item!r}")
            kwargs[attr] = items
        elif conv is str:
            kwargs[attr] = value
        else:
            try:
                kwargs[attr] = conv(value)
            except ValueError as exc:
                raise ConfigError(f"{key}: malformed number {value!r} (line {lineno})") from exc

    cfg = RunConfig(**kwargs)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    if cfg.N < 1:
        raise ConfigError(f"N: must be >= 1, got {cfg.N}")
    if cfg.n < 1:
        raise ConfigError(f"n: must be >= 1, got {cfg.n}")
    if cfg.grid_points < 2 or cfg.grid_x_max <= 0:
        raise ConfigError(f"grid: invalid extent/points {cfg.grid_x_max}/{cfg.grid_points}")
    if cfg.solver_method not in ("krylov", "imaginary_time"):
        raise ConfigError(f"solver.method: unknown method {cfg.solver_method!r}")
    if cfg.scan_axis is not None and cfg.scan_axis not in SCAN_AXES:
        raise ConfigError(f"scan.axis: must be one of {SCAN_AXES}, got {cfg.scan_axis!r}")
    if cfg.scan_values:
        vals = cfg.scan_values
        if not all(np.isfinite(vals)):
            raise ConfigError("scan.values: values must be finite")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ConfigError(f"scan.values: must be strictly ascending, got {vals}")
    try:  # surface component invariants with their key paths
        cfg.trap()
    except ValueError as exc:
        raise ConfigError(f"trap: {exc}") from exc
    try:
        cfg.interaction()
    except ValueError as exc:
        raise ConfigError(f"interaction: {exc}") from exc


def config_hash(cfg: RunConfig) -> str:
    blob = json.dumps(asdict(cfg), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


def _orbital_basis(cfg: RunConfig, n: int | None = None):
    grid = make_grid(cfg.grid_x_max, cfg.grid_points)
    potential = build_potential(grid, cfg.trap())
    return solve_1p(grid, potential, n if n is not None else cfg.n)


def solve_point(cfg: RunConfig):
    """Solve one configuration; returns (report, basis1p)."""
    basis1p = _orbital_basis(cfg)
    tensor = two_body_tensor(basis1p, cfg.interaction())
    basis = enumerate_basis(cfg.N, cfg.n)
    if cfg.solver_method == "imaginary_time":
        report = relax_imaginary_time(basis, basis1p, tensor, dtau=cfg.solver_dtau,
                                      tol=cfg.solver_tol)
    else:
        report = ground_state_krylov(basis, basis1p, tensor, tol=cfg.solver_tol)
    return report, basis1p


def _point_config(cfg: RunConfig, axis: str, value: float) -> RunConfig:
    kwargs = asdict(cfg)
    kwargs.update(scan_axis=None, scan_values=[])
    if axis == "n":
        kwargs["n"] = int(value)
    else:
        kwargs[axis] = value
    return RunConfig(**kwargs)


def _scan_worker(args):
    cfg, axis, value = args
    point = _point_config(cfg, axis, value)
    try:
        report, basis1p = solve_point(point)
    except SolverError as exc:
        return value, None, str(exc)
    dm, profile = one_body_density(report.state, basis1p)
    row = {
        "value": value,
        "E": report.energy,
        "n0": float(dm.natural_occupations[0]),
        "mean_x": displacement(profile),
        "residual": report.residual_norm,
        "iterations": report.iterations,
    }
    return value, row, None


def run_scan(cfg: RunConfig, out_dir: str, jobs: int = 1, quiet: bool = False) -> int:
    axis = cfg.scan_axis or "g0"
    values = cfg.scan_values or list(DEFAULT_SCAN_VALUES)
    tasks = [(cfg, axis, v) for v in values]
    if jobs > 1:
        # spawn, not fork: forked workers inherit the parent's JIT thread
        # state and can deadlock or crash
        ctx = multiprocessing.get_context("spawn")
        with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
            results = list(pool.map(_scan_worker, tasks))
    else:
        results = [_scan_worker(t) for t in tasks]

    tag = f"config={config_hash(cfg)} version={__version__}"
    rows, failures = [], []
    for value, row, err in results:
        if err is None:
            rows.append(row)
        else:
            failures.append({"value": value, "error": err})

    os.makedirs(out_dir, exist_ok=True)
    scan_path = os.path.join(out_dir, "scan.csv")
    with open(scan_path, "w") as f:
        f.write(f"# {tag}\n")
        f.write(f"{axis},E,n0,mean_x,residual,iterations\n")
        for row in rows:
            f.write(f"{row['value']!r},{row['E']!r},{row['n0']!r},"
                    f"{row['mean_x']!r},{row['residual']!r},{row['iterations']}\n")
    if failures:
        with open(os.path.join(out_dir, "failures.json"), "w") as f:
            json.dump(failures, f, indent=2, sort_keys=True)
    if not quiet:
        print(f"scan over {axis}: {len(rows)} converged, {len(failures)} failed -> {scan_path}")
    return EXIT_OK if not failures else EXIT_SOLVER


def run_solve(cfg: RunConfig, out_dir: str, quiet: bool = False) -> int:
    report, basis1p = solve_point(cfg)
    dm, profile = one_body_density(report.state, basis1p)
    tag = f"config={config_hash(cfg)} version={__version__}"

    os.makedirs(out_dir, exist_ok=True)
    summary = {
        "version": __version__,
        "config": asdict(cfg),
        "config_hash": config_hash(cfg),
        "energy": report.energy,
        "n0": float(dm.natural_occupations[0]),
        "mean_x": displacement(profile),
        "residual": report.residual_norm,
        "iterations": report.iterations,
        "method": report.method,
    }
    with open(os.path.join(out_dir, "summary.json"), "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
    if "rho1" in cfg.outputs:
        write_profile_csv(os.path.join(out_dir, "rho1.csv"), profile, tag)
    if "rho2" in cfg.outputs and cfg.N >= 2:
        rho2 = two_body_density(report.state, basis1p)
        write_profile_csv(os.path.join(out_dir, "rho2.csv"), rho2, tag)
    if "occupations" in cfg.outputs:
        write_occupations_csv(os.path.join(out_dir, "occupations.csv"), dm, tag)
    if not quiet:
        print(f"E = {report.energy:.10f}  n0 = {summary['n0']:.6f}  "
              f"<x> = {summary['mean_x']:.6f}  ({report.method}, "
              f"{report.iterations} iterations)")
    return EXIT_OK


def run_converge(cfg: RunConfig, out_dir: str, quiet: bool = False) -> int:
    n_list = [int(v) for v in cfg.scan_values] or list(range(1, cfg.n + 1))
    basis1p = _orbital_basis(cfg, n=max(n_list))
    table = convergence_sweep(cfg.N, n_list, basis1p, cfg.interaction(),
                              tol=cfg.solver_tol)
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "converge.csv")
    with open(path, "w") as f:
        f.write(f"# config={config_hash(cfg)} version={__version__}\n")
        f.write("n,E\n")
        for n, e in table:
            f.write(f"{n},{e!r}\n")
    if not quiet:
        print(f"convergence sweep n={n_list[0]}..{n_list[-1]} -> {path}")
    return EXIT_OK


def run_oracle(cfg: RunConfig, out_dir: str, quiet: bool = False) -> int:
    basis1p = _orbital_basis(cfg, n=max(cfg.n, cfg.N))
    energy, profile = tg_oracle(basis1p, cfg.N)
    os.makedirs(out_dir, exist_ok=True)
    tag = f"config={config_hash(cfg)} version={__version__}"
    write_profile_csv(os.path.join(out_dir, "rho1_tg.csv"), profile, tag)
    with open(os.path.join(out_dir, "oracle.json"), "w") as f:
        json.dump({"E_TG": energy, "config_hash": config_hash(cfg),
                   "version": __version__}, f, indent=2, sort_keys=True)
    if not quiet:
        print(f"E_TG = {energy:.10f}")
    return EXIT_OK


# table row defaults mirror the physically sensible scattering inputs at
# aperp' = 0.1 (alkali atoms over four decades of trap frequency)
TABLE1_A0 = (1.9e-3, 5e-3, 6e-3, 1.6e-2, 1.9e-2, 5e-2, 6e-2, 1.6e-1)


def run_table1(a0_values, aperp: float, quiet: bool = False) -> int:
    print(f"{'a0_scaled':>12}  {'g_1d':>12}")
    for a0 in a0_values:
        try:
            g = coupling_strength_1d(PhysicalParams(a0, aperp))
            print(f"{a0:>12.4g}  {g:>12.4g}")
        except ResonanceError:
            print(f"{a0:>12.4g}  {'resonance':>12}")
    return EXIT_OK


def _read_config(path: str) -> RunConfig:
    with open(path) as f:
        return parse_config(f.read())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fewboson",
        description="Ground states of few repulsive bosons in 1D traps",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solve", "scan", "converge", "oracle"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)
        p.add_argument("--out", default=None, help="output directory "
                       f"(default: ${OUT_DIR_ENV} or current directory)")
        p.add_argument("--quiet", action="store_true")
        if name == "scan":
            p.add_argument("--jobs", type=int, default=1)
    t1 = sub.add_parser("table1")
    t1.add_argument("a0", nargs="*", type=float, default=None)
    t1.add_argument("--aperp", type=float, default=0.1)
    t1.add_argument("--quiet", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "table1":
            return run_table1(args.a0 or TABLE1_A0, args.aperp)
        cfg = _read_config(args.config)
        out_dir = args.out or os.environ.get(OUT_DIR_ENV) or "."
        if args.command == "solve":
            return run_solve(cfg, out_dir, quiet=args.quiet)
        if args.command == "scan":
            return run_scan(cfg, out_dir, jobs=args.jobs, quiet=args.quiet)
        if args.command == "converge":
            return run_converge(cfg, out_dir, quiet=args.quiet)
        if args.command == "oracle":
            return run_oracle(cfg, out_dir, quiet=args.quiet)
        raise AssertionError(args.command)
    except (ConfigError, ResonanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
