"""
Command-line front end.

Modes
-----
table1        alpha, A, B, tau for the Kratzer-Fues molecule
table2        k*, Q1, gamma and energies (eV) per (N, alpha)
spectrum      full spectral solution per (N, alpha, n)
wavefunction  radial samples, one CSV per (N, alpha, n)
potential     V(r) and its second difference per alpha
roots         every root of q2 per (N, alpha)
verify        self-check report

Settings come from built-in defaults, then a ``key=value`` config file
(``--config`` or the ``FRACSPEC_CONFIG`` environment variable), then flags.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConfigError, FracSpecError
from .laplace import tau_factor
from .spectrum import (
    GEV_TO_EV,
    ModelParams,
    QuantumNumbers,
    SpectralSolution,
    energy,
    nu_product,
    potential,
    potential_curvature,
    radial_wavefunction,
    select_branch,
    solve_kstar,
    solve_state,
)
from .verify import all_passed, run_checks

__all__ = [
    "MODES",
    "RunConfig",
    "Table",
    "format_value",
    "load_config_file",
    "load_branch_file",
    "build_config",
    "run_table1",
    "run_table2",
    "run_spectrum",
    "run_roots",
    "run_potential",
    "run_wavefunction",
    "run_verify",
    "main",
]

MODES = ("table1", "table2", "spectrum", "wavefunction", "potential", "roots", "verify")
DEFAULT_ALPHAS = (0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 1.0)
TABLE_DIGITS = 4
DATA_DIGITS = 17
ENV_CONFIG = "FRACSPEC_CONFIG"
REFERENCE_BRANCHES = "reference"

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_VERIFY = 0, 2, 3, 4


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI run needs. Potential coefficients follow the Kratzer-Fues construction."""

    mode: str = "table1"
    alpha_list: tuple[float, ...] = DEFAULT_ALPHAS
    dims: tuple[int, ...] = (3, 4, 5)
    n_list: tuple[int, ...] = (1, 2)
    ell: int = 1
    mass: float = 0.31
    d0: float = 2e-9
    r0: float = 1e5
    c: float = 0.0
    delta: float = -0.5
    r_min: float = 1e3
    r_max: float = 5e5
    r_points: int = 500
    k_max: float = 12.0
    grid_step: float = 1e-3
    branch_file: Optional[str] = None
    output_path: str = "-"
    format: str = "csv"
    workers: int = 1

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        if not self.alpha_list:
            raise ConfigError("alpha list is empty")
        if any(not 0 < a <= 1 for a in self.alpha_list):
            raise ConfigError("every alpha must lie in (0, 1]")
        if not self.dims or any(d < 2 for d in self.dims):
            raise ConfigError("every dimension must be >= 2")
        if not self.n_list or any(n < 0 for n in self.n_list):
            raise ConfigError("every n must be >= 0")
        if self.ell < 0:
            raise ConfigError("ell must be >= 0")
        if min(self.mass, self.d0, self.r0) <= 0:
            raise ConfigError("mass, d0 and r0 must be positive")
        if not -1 < self.delta < 0:
            raise ConfigError("delta must lie in (-1, 0)")
        if self.mode in ("wavefunction", "potential"):
            if not 0 < self.r_min < self.r_max:
                raise ConfigError("need 0 < rmin < rmax")
            if self.r_points < 2:
                raise ConfigError("points must be >= 2")
        if self.k_max <= 0 or self.grid_step <= 0:
            raise ConfigError("kmax and grid-step must be positive")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def params_for(self, alpha: float) -> ModelParams:
        return ModelParams.kratzer_fues(alpha, self.mass, self.d0, self.r0, self.c, self.delta)

    def r_grid(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.r_points)


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.replace(",", " ").split())


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.replace(",", " ").split())


# config key / flag name -> (RunConfig field, parser)
_KEYS: dict[str, tuple[str, Callable[[str], object]]] = {
    "mode": ("mode", str),
    "alpha": ("alpha_list", _float_list),
    "dim": ("dims", _int_list),
    "n": ("n_list", _int_list),
    "ell": ("ell", int),
    "mass": ("mass", float),
    "d0": ("d0", float),
    "r0": ("r0", float),
    "c": ("c", float),
    "delta": ("delta", float),
    "rmin": ("r_min", float),
    "rmax": ("r_max", float),
    "points": ("r_points", int),
    "kmax": ("k_max", float),
    "grid-step": ("grid_step", float),
    "branch-file": ("branch_file", str),
    "out": ("output_path", str),
    "format": ("format", str),
    "workers": ("workers", int),
}


def load_config_file(path: str) -> dict[str, object]:
    """Parse ``key=value`` lines into RunConfig field values.

    Keys are the flag names without dashes (``alpha``, ``branch-file``, ...);
    ``_`` and ``-`` are interchangeable. List keys take comma- or
    space-separated values. ``#`` starts a comment.
    """
    out: dict[str, object] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower().replace("_", "-")
        if not sep or key not in _KEYS:
            raise ConfigError(f"{path}:{lineno}: cannot parse {raw.strip()!r}")
        name, conv = _KEYS[key]
        try:
            out[name] = conv(value.strip())
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return out


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fracspec",
        description="Fractional Mie-type potential: tables, spectra, wavefunctions and self-checks.",
        argument_default=argparse.SUPPRESS,
    )
    p.add_argument("--config", help="key=value config file (default: $FRACSPEC_CONFIG)")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--alpha", type=float, action="append", help="fractional order, repeatable")
    p.add_argument("--dim", type=int, action="append", help="dimension N, repeatable")
    p.add_argument("--n", type=int, action="append", help="radial index, repeatable")
    p.add_argument("--ell", type=int)
    p.add_argument("--mass", type=float, help="reduced mass M [GeV]")
    p.add_argument("--d0", type=float, help="well depth D0 [GeV]")
    p.add_argument("--r0", type=float, help="equilibrium distance r0 [1/GeV]")
    p.add_argument("--c", type=float, help="constant C [GeV]")
    p.add_argument("--delta", type=float, help="Laplace branch parameter in (-1, 0)")
    p.add_argument("--rmin", type=float)
    p.add_argument("--rmax", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--kmax", type=float, help="upper end of the k* scan")
    p.add_argument("--grid-step", type=float, help="k* scan step")
    p.add_argument(
        "--branch-file",
        help=f"'N alpha index' lines choosing the k* root; '{REFERENCE_BRANCHES}' uses the bundled file",
    )
    p.add_argument("--out", help="output file ('-' for stdout); a directory in wavefunction mode")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--workers", type=int, help="worker processes for per-row work")
    return p


# argparse dest -> RunConfig field
_FLAG_FIELDS = {key.replace("-", "_"): name for key, (name, _) in _KEYS.items()}


def build_config(argv: Optional[Sequence[str]] = None, env: Optional[dict] = None) -> RunConfig:
    """Defaults, then the config file, then flags."""
    env = os.environ if env is None else env
    ns = vars(_parser().parse_args(argv))
    values: dict[str, object] = {}
    path = ns.pop("config", None) or env.get(ENV_CONFIG)
    if path:
        values.update(load_config_file(path))
    for flag, val in ns.items():
        name = _FLAG_FIELDS[flag]
        values[name] = tuple(val) if isinstance(val, list) else val
    return RunConfig(**values)


def load_branch_file(spec: Optional[str]) -> dict[tuple[int, float], int]:
    """Read ``N alpha index`` lines; ``'reference'`` selects the bundled file."""
    if spec is None:
        return {}
    if spec == REFERENCE_BRANCHES:
        text = resources.files("fracspec").joinpath("data/reference_branches.txt").read_text()
        where = "bundled branch file"
    else:
        try:
            text = Path(spec).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read branch file {spec}: {exc}") from exc
        where = spec
    out: dict[tuple[int, float], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        try:
            N, a, idx = int(line[0]), float(line[1]), int(line[2])
        except (IndexError, ValueError) as exc:
            raise ConfigError(f"{where}:{lineno}: expected 'N alpha index'") from exc
        out[(N, round(a, 9))] = idx
    return out


# ---------------------------------------------------------------------------
# tables and formatting


@dataclass
class Table:
    columns: list[str]
    rows: list[list[object]]
    digits: int = DATA_DIGITS
    failures: int = 0


def format_value(x: object, digits: int) -> str:
    """Fixed text form of one cell.

    Floats get ``digits`` significant digits, in scientific notation when
    ``|x| < 1e-3`` or ``|x| >= 1e6`` and fixed-point otherwise.
    """
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    v = float(x)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v == 0.0:
        return "0"
    av = abs(v)
    if av < 1e-3 or av >= 1e6:
        return f"{v:.{digits - 1}e}"
    decimals = digits - 1 - math.floor(math.log10(av))
    return f"{v:.{max(decimals, 0)}f}"


def _json_value(x: object) -> object:
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        return v if math.isfinite(v) else None
    return x


def render(table: Table, fmt: str) -> str:
    if fmt == "json":
        recs = [{c: _json_value(v) for c, v in zip(table.columns, row)} for row in table.rows]
        return json.dumps(recs, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([format_value(v, table.digits) for v in row])
    return buf.getvalue()


def _write(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text)


def _map(cfg: RunConfig, func, tasks: list) -> list:
    """Apply ``func`` to ``tasks`` keeping input order, optionally in worker processes."""
    if cfg.workers == 1 or len(tasks) < 2:
        return [func(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
        return list(ex.map(func, tasks))


# ---------------------------------------------------------------------------
# modes


def run_table1(cfg: RunConfig) -> Table:
    rows = []
    for a in sorted(cfg.alpha_list):
        P = cfg.params_for(a)
        rows.append([a, P.coeff_A, P.coeff_B, tau_factor(a, cfg.delta)])
    return Table(["alpha", "A", "B", "tau"], rows, TABLE_DIGITS)


def _pick_root(cfg: RunConfig, branches: dict, N: int, alpha: float):
    P = cfg.params_for(alpha)
    nu = nu_product(alpha, QuantumNumbers(0, cfg.ell, N), P.mass_M, P.coeff_A)
    roots = solve_kstar(alpha, N, nu, cfg.k_max, cfg.grid_step, delta=cfg.delta)
    idx = branches.get((N, round(alpha, 9)))
    return roots, select_branch(roots, idx), idx


def _table2_row(task):
    cfg, branches, N, alpha = task
    try:
        _, root, idx = _pick_root(cfg, branches, N, alpha)
        P = cfg.params_for(alpha)
        es = [energy(n, alpha, QuantumNumbers(n, cfg.ell, N), P, root.k) * GEV_TO_EV for n in cfg.n_list]
        branch = "default" if idx is None else str(idx)
        return [N, alpha, branch, root.k, root.q1, root.gamma_alpha, *es, "ok"], False
    except FracSpecError as exc:
        nan = float("nan")
        return [N, alpha, "-", nan, nan, nan, *[nan] * len(cfg.n_list), type(exc).__name__], True


def run_table2(cfg: RunConfig) -> Table:
    branches = load_branch_file(cfg.branch_file)
    tasks = [(cfg, branches, N, a) for N in sorted(cfg.dims) for a in sorted(cfg.alpha_list)]
    out = _map(cfg, _table2_row, tasks)
    cols = ["N", "alpha", "branch", "k_star", "Q1", "gamma_alpha", *[f"E_n{n}_eV" for n in cfg.n_list], "status"]
    return Table(cols, [r for r, _ in out], TABLE_DIGITS, sum(f for _, f in out))


def _solutions(cfg: RunConfig) -> list[tuple[tuple, Optional[SpectralSolution], str]]:
    branches = load_branch_file(cfg.branch_file)
    tasks = [
        (cfg, branches, N, a, n) for N in sorted(cfg.dims) for a in sorted(cfg.alpha_list) for n in sorted(cfg.n_list)
    ]
    return _map(cfg, _solve_task, tasks)


def _solve_task(task):
    cfg, branches, N, alpha, n = task
    try:
        _, root, _ = _pick_root(cfg, branches, N, alpha)
        sol = solve_state(alpha, QuantumNumbers(n, cfg.ell, N), cfg.params_for(alpha), k_star=root.k)
        return (N, alpha, n), sol, "ok"
    except FracSpecError as exc:
        return (N, alpha, n), None, type(exc).__name__


_SOL_FIELDS = [f.name for f in fields(SpectralSolution)]


def run_spectrum(cfg: RunConfig) -> Table:
    rows, fails = [], 0
    for (N, a, n), sol, status in _solutions(cfg):
        if sol is None:
            fails += 1
            base = {"alpha": a, "dim_N": N, "n": n, "ell": cfg.ell}
            rows.append([base.get(f, float("nan")) for f in _SOL_FIELDS] + [float("nan"), status])
        else:
            rows.append([getattr(sol, f) for f in _SOL_FIELDS] + [sol.energy_ev, status])
    return Table(_SOL_FIELDS + ["energy_ev", "status"], rows, DATA_DIGITS, fails)


def _roots_task(task):
    cfg, branches, N, alpha = task
    try:
        roots, chosen, _ = _pick_root(cfg, branches, N, alpha)
    except FracSpecError as exc:
        nan = float("nan")
        return [[N, alpha, -1, nan, nan, nan, nan, nan, False, type(exc).__name__]], True
    return [
        [N, alpha, i, r.k, r.q2_residual, r.q1, r.gamma_alpha, r.growth_exponent, r is chosen, "ok"]
        for i, r in enumerate(roots)
    ], False


def run_roots(cfg: RunConfig) -> Table:
    branches = load_branch_file(cfg.branch_file)
    tasks = [(cfg, branches, N, a) for N in sorted(cfg.dims) for a in sorted(cfg.alpha_list)]
    out = _map(cfg, _roots_task, tasks)
    cols = ["N", "alpha", "index", "k", "q2_residual", "Q1", "gamma_alpha", "growth_exponent", "selected", "status"]
    return Table(cols, [row for rows, _ in out for row in rows], DATA_DIGITS, sum(f for _, f in out))


def run_potential(cfg: RunConfig) -> Table:
    r = cfg.r_grid()
    rows = []
    for a in sorted(cfg.alpha_list):
        P = cfg.params_for(a)
        v = potential(P, a, r)
        for ri, vi in zip(r, v):
            rows.append([a, ri, vi, potential_curvature(P, a, float(ri))])
    return Table(["alpha", "r", "V", "d2V"], rows, DATA_DIGITS)


def _wave_task(task):
    cfg, key, sol = task
    N, a, n = key
    sample = radial_wavefunction(n, a, sol, cfg.r_grid(), on_overflow="drop")
    return key, sample


def wavefunction_filename(N: int, alpha: float, n: int) -> str:
    return f"wavefunction_N{N}_alpha{alpha:.4f}_n{n}.csv"


def run_wavefunction(cfg: RunConfig) -> tuple[dict[tuple, Table], dict[str, int]]:
    """Per-tuple ``(r, R)`` tables and a summary with failure and dropped-point counts."""
    sols = _solutions(cfg)
    good = [(cfg, key, sol) for key, sol, _ in sols if sol is not None]
    summary = {"tuples": len(sols), "failed": len(sols) - len(good), "dropped_points": 0}
    tables: dict[tuple, Table] = {}
    for key, sample in _map(cfg, _wave_task, good):
        summary["dropped_points"] += sample.dropped
        rows = [[ri, Ri] for ri, Ri in zip(sample.r_values, sample.R_values)]
        tables[key] = Table(["r", "R"], rows, DATA_DIGITS)
    return tables, summary


def run_verify(cfg: RunConfig) -> Table:
    results = run_checks()
    rows = [[r.suite, r.name, r.error, r.tolerance, r.passed, r.known_discrepancy] for r in results]
    return Table(
        ["suite", "check", "error", "tolerance", "passed", "known_discrepancy"],
        rows,
        DATA_DIGITS,
        0 if all_passed(results) else 1,
    )


# ---------------------------------------------------------------------------
# entry point


def _emit_wavefunctions(cfg: RunConfig) -> int:
    tables, summary = run_wavefunction(cfg)
    ext = "json" if cfg.format == "json" else "csv"
    if cfg.output_path == "-":
        rows = [[N, a, n, *row] for (N, a, n), t in tables.items() for row in t.rows]
        _write(render(Table(["N", "alpha", "n", "r", "R"], rows, DATA_DIGITS), cfg.format), "-")
    else:
        out = Path(cfg.output_path)
        for (N, a, n), t in tables.items():
            name = wavefunction_filename(N, a, n).replace(".csv", f".{ext}")
            _write(render(t, cfg.format), str(out / name))
    sys.stderr.write(
        f"wavefunction: {summary['tuples']} tuples, {summary['failed']} failed, "
        f"{summary['dropped_points']} points dropped by the overflow guard\n"
    )
    return EXIT_NUMERIC if summary["failed"] else EXIT_OK


_RUNNERS = {
    "table1": run_table1,
    "table2": run_table2,
    "spectrum": run_spectrum,
    "roots": run_roots,
    "potential": run_potential,
    "verify": run_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = build_config(argv)
        load_branch_file(cfg.branch_file)
    except SystemExit as exc:  # argparse
        return EXIT_CONFIG if exc.code else EXIT_OK
    except ConfigError as exc:
        sys.stderr.write(f"fracspec: configuration error: {exc}\n")
        return EXIT_CONFIG
    try:
        if cfg.mode == "wavefunction":
            return _emit_wavefunctions(cfg)
        table = _RUNNERS[cfg.mode](cfg)
        _write(render(table, cfg.format), cfg.output_path)
    except OSError as exc:
        sys.stderr.write(f"fracspec: cannot write output: {exc}\n")
        return EXIT_CONFIG
    except FracSpecError as exc:
        sys.stderr.write(f"fracspec: numerical failure: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC
    if cfg.mode == "verify":
        if table.failures:
            sys.stderr.write("fracspec: verification failed\n")
            return EXIT_VERIFY
        return EXIT_OK
    if table.failures:
        sys.stderr.write(f"fracspec: {table.failures} row(s) failed\n")
        return EXIT_NUMERIC
    return EXIT_OK


def console_main() -> None:
    raise SystemExit(main())
