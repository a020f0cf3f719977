"""Command-line front end: solve, verify, convergence.

Exit codes: 0 success, 1 validation problem, 2 numerical failure.

The solve subcommand writes the absolute-error table (rows xi, columns
eta) as CSV or JSON next to a metadata JSON recording every config field
used, and optionally a 51 x 51 surface CSV of the approximate solution
for external plotting.  A config file with flat ``key = value`` lines can
stand in for the flags; explicit flags win over config entries.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from . import __version__
from .operator import CollocationGrid, GramAssemblyError
from .orthonormalize import NotPositiveDefiniteError
from .problems import build_custom, build_problem, COEFFICIENT_CATALOG
from .solver import SolverOptions, convergence_study, error_report, evaluate, solve
from .verification import run_default_checks

__all__ = ["main", "RunConfig", "parse_mesh"]

MAX_POINTS = 10_000


class _ValidationError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; validation is 1 here
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    example: Optional[str] = None
    config: Optional[str] = None
    alpha: float = 0.9
    p: int = 5
    q: int = 5
    nodes: int = 64
    picard: int = 0
    mesh: str = "0.1:0.1:0.6"
    out: Optional[str] = None
    format: str = "csv"
    surface: Optional[str] = None
    sizes: Optional[str] = None
    custom: dict = field(default_factory=dict)

    def validate(self):
        if self.p < 1 or self.q < 1:
            raise _ValidationError("p and q must be positive")
        if self.p * self.q > MAX_POINTS:
            raise _ValidationError(f"p * q = {self.p * self.q} exceeds the guard rail {MAX_POINTS}")
        if self.nodes < 1:
            raise _ValidationError("quadrature node count must be positive")
        if self.picard < 0:
            raise _ValidationError("picard iteration count must be non-negative")
        if self.format not in ("csv", "json"):
            raise _ValidationError(f"unknown output format {self.format!r}")


def parse_mesh(spec: str) -> List[float]:
    """Parse 'start:step:end' into an inclusive list of mesh values."""
    try:
        start, step, end = (float(tok) for tok in spec.split(":"))
    except ValueError as exc:
        raise _ValidationError(f"mesh spec must be start:step:end, got {spec!r}") from exc
    if step <= 0 or end < start:
        raise _ValidationError(f"degenerate mesh spec {spec!r}")
    count = int(round((end - start) / step)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def _parse_sizes(spec: str) -> List[Tuple[int, int]]:
    """Comma-separated sizes, each 'PxQ' or a perfect-square point count."""
    sizes = []
    for tok in spec.split(","):
        tok = tok.strip().lower()
        if "x" in tok:
            p_str, q_str = tok.split("x")
            sizes.append((int(p_str), int(q_str)))
        else:
            n = int(tok)
            root = int(round(n**0.5))
            if root * root != n:
                raise _ValidationError(f"size {n} is not a perfect square; use the PxQ form")
            sizes.append((root, root))
    return sizes


def _read_config_file(path: str) -> dict:
    entries = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise _ValidationError(f"config line without '=': {raw.strip()!r}")
                key, value = (part.strip() for part in line.split("=", 1))
                entries[key] = value
    except OSError as exc:
        raise _ValidationError(f"cannot read config file {path}: {exc}") from exc
    return entries

_CUSTOM_KEYS = ("problem", "k1", "k2", "k3", "k4", "f", "exact_space", "exact_power")


def _apply_config_file(cfg: RunConfig, explicit: set):
    entries = _read_config_file(cfg.config)
    casts = {"alpha": float, "p": int, "q": int, "nodes": int, "picard": int}
    for key, value in entries.items():
        if key in _CUSTOM_KEYS:
            cfg.custom[key] = value
        elif key in ("example", "mesh", "out", "format", "surface", "sizes"):
            if key not in explicit:
                setattr(cfg, key, value)
        elif key in casts:
            if key not in explicit:
                try:
                    setattr(cfg, key, casts[key](value))
                except ValueError as exc:
                    raise _ValidationError(f"config key {key}={value!r}: {exc}") from exc
        else:
            raise _ValidationError(f"unknown config key {key!r}")


def _build_problem(cfg: RunConfig):
    if cfg.custom.get("problem") == "custom":
        missing = [k for k in ("k1", "k2", "k3", "k4", "f") if k not in cfg.custom]
        if missing:
            raise _ValidationError(f"custom problem config missing keys: {', '.join(missing)}")
        f_name = cfg.custom["f"]
        if f_name not in COEFFICIENT_CATALOG:
            raise _ValidationError(f"f = {f_name!r} is not in the coefficient catalog")
        power = cfg.custom.get("exact_power")
        return build_custom(
            cfg.alpha,
            k1=cfg.custom["k1"],
            k2=cfg.custom["k2"],
            k3=cfg.custom["k3"],
            k4=cfg.custom["k4"],
            f=COEFFICIENT_CATALOG[f_name],
            exact_space=cfg.custom.get("exact_space"),
            exact_power=float(power) if power is not None else None,
        )
    if cfg.example is None:
        raise _ValidationError("select a problem with --example or a config file")
    return build_problem(cfg.example, cfg.alpha)


def _format_cell(value: float) -> str:
    return f"{value:.5e}"


def _error_table_lines(mesh: List[float], table: List[List[float]]) -> List[str]:
    header = "xi/eta," + ",".join(_format_cell(e) for e in mesh)
    lines = [header]
    for x, row in zip(mesh, table):
        lines.append(_format_cell(x) + "," + ",".join(_format_cell(v) for v in row))
    return lines


def _write_text(path: Optional[str], text: str):
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _meta_path(out: str) -> str:
    stem, dot, _ = out.rpartition(".")
    return (stem if dot else out) + ".meta.json"


def _cmd_solve(cfg: RunConfig) -> int:
    cfg.validate()
    problem = _build_problem(cfg)
    mesh = parse_mesh(cfg.mesh)
    t0 = time.perf_counter()
    sol = solve(
        problem,
        CollocationGrid.uniform(cfg.p, cfg.q),
        SolverOptions(quadrature_nodes=cfg.nodes, picard_iters=cfg.picard),
    )
    wall = time.perf_counter() - t0

    table = [[abs(evaluate(sol, x, e) - problem.exact(x, e)) for e in mesh] for x in mesh] \
        if problem.exact is not None else None
    report = error_report(sol, [(x, e) for x in mesh for e in mesh]) if problem.exact is not None else None

    if table is not None:
        if cfg.format == "csv":
            _write_text(cfg.out, "\n".join(_error_table_lines(mesh, table)) + "\n")
        else:
            payload = {"mesh": mesh, "abs_error": table}
            _write_text(cfg.out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        print("no exact solution declared; skipping the error table")

    if cfg.surface is not None:
        pts = [i / 50.0 for i in range(51)]
        lines = ["xi,eta,y"]
        for x in pts:
            for e in pts:
                lines.append(f"{x:.10g},{e:.10g},{evaluate(sol, x, e):.10g}")
        _write_text(cfg.surface, "\n".join(lines) + "\n")

    meta = {
        "command": "solve",
        "example": cfg.example,
        "config": cfg.config,
        "alpha": problem.alpha,
        "p": cfg.p,
        "q": cfg.q,
        "n": cfg.p * cfg.q,
        "quadrature_nodes": cfg.nodes,
        "picard_iters": cfg.picard,
        "mesh": cfg.mesh,
        "out": cfg.out,
        "format": cfg.format,
        "surface": cfg.surface,
        "max_abs_error": report.max_abs_error if report else None,
        "mean_abs_error": report.mean_abs_error if report else None,
        "wall_seconds": wall,
        "version": __version__,
    }
    meta_text = json.dumps(meta, indent=2, sort_keys=True) + "\n"
    if cfg.out is not None:
        _write_text(_meta_path(cfg.out), meta_text)
    else:
        sys.stdout.write(meta_text)
    if report is not None:
        print(f"max abs error {report.max_abs_error:.6e}, mean {report.mean_abs_error:.6e}, {wall:.2f} s")
    return 0


def _cmd_verify(cfg: RunConfig) -> int:
    cfg.validate()
    results = run_default_checks(alpha=cfg.alpha, p=min(cfg.p, 4), q=min(cfg.q, 4), nodes=cfg.nodes)
    for res in results:
        print(res.line())
    return 0 if all(r.passed for r in results) else 2


def _cmd_convergence(cfg: RunConfig) -> int:
    cfg.validate()
    if not cfg.sizes:
        raise _ValidationError("convergence requires --sizes, e.g. --sizes 9,25,49 or 3x3,5x5")
    sizes = _parse_sizes(cfg.sizes)
    for p, q in sizes:
        if p < 1 or q < 1 or p * q > MAX_POINTS:
            raise _ValidationError(f"size {p}x{q} outside the guard rail")
    problem = _build_problem(cfg)
    if problem.exact is None:
        raise _ValidationError("convergence study requires a problem with an exact solution")
    mesh = parse_mesh(cfg.mesh)
    rows = convergence_study(
        problem,
        sizes,
        [(x, e) for x in mesh for e in mesh],
        SolverOptions(quadrature_nodes=cfg.nodes, picard_iters=cfg.picard),
    )
    lines = ["n,max_abs_error,wall_seconds"]
    for row in rows:
        lines.append(f"{row.n},{_format_cell(row.max_abs_error)},{row.wall_seconds:.3f}")
    _write_text(cfg.out, "\n".join(lines) + "\n")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="rkburgers", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solve", "verify", "convergence"):
        sp = sub.add_parser(name)
        sp.add_argument("--example", choices=("1", "2"), default=None)
        sp.add_argument("--config", default=None)
        sp.add_argument("--alpha", type=float, default=None)
        sp.add_argument("--p", type=int, default=None)
        sp.add_argument("--q", type=int, default=None)
        sp.add_argument("--nodes", type=int, default=None)
        sp.add_argument("--picard", type=int, default=None)
        sp.add_argument("--mesh", default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        if name == "solve":
            sp.add_argument("--surface", default=None)
        if name == "convergence":
            sp.add_argument("--sizes", default=None)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = RunConfig()
    explicit = set()
    for key in ("example", "config", "alpha", "p", "q", "nodes", "picard",
                "mesh", "out", "format", "surface", "sizes"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
            explicit.add(key)
    try:
        if cfg.config is not None:
            _apply_config_file(cfg, explicit)
        if args.command == "solve":
            return _cmd_solve(cfg)
        if args.command == "verify":
            return _cmd_verify(cfg)
        return _cmd_convergence(cfg)
    except NotPositiveDefiniteError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (_ValidationError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    except (GramAssemblyError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
