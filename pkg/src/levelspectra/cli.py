"""Command-line surface: per-tree analysis, enumeration verification,
extremal search, special families, and exact characteristic polynomials.

Exit codes: 0 ok, 1 verification violations or failed expectation, 2 parse
error, 3 I/O error, 4 resource limit, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import bounds as bounds_mod
from . import verify as verify_mod
from .bounds import BoundReport, SpectralData, leafstar_cubic_roots, path_rho_closed_form
from .errors import LevelSpectraError, ParseError, ResourceLimit
from .levelmatrix import LevelMatrix
from .spectra import (
    DEFAULT_CHARPOLY_CAP,
    DEFAULT_CLUSTER_TOL,
    CharPoly,
    Spectrum,
    characteristic_polynomial,
    exact_zero_multiplicity,
)
from .levelmatrix import build_level_matrix
from .trees import (
    RootedTree,
    canonical_level_sequence,
    canonicalize,
    complete_dary,
    format_tree,
    is_rooted_path,
    is_rooted_star,
    levels,
    parse_tree,
    rooted_path,
    rooted_star,
    star_rooted_at_leaf,
    to_dot,
)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_PARSE = 2
EXIT_IO = 3
EXIT_RESOURCE = 4
EXIT_USAGE = 64


def _fmt(x: float) -> str:
    """Deterministic float rendering: 12 significant digits."""
    return f"{float(x):.12g}"


def polynomial_text(charpoly: CharPoly) -> str:
    """Human form of a monic integer polynomial, highest degree first."""
    parts = []
    n = charpoly.degree
    for k, c in enumerate(charpoly.coeffs):
        if c == 0:
            continue
        power = n - k
        mag = abs(c)
        if power == 0:
            term = str(mag)
        else:
            x = "x" if power == 1 else f"x^{power}"
            term = x if mag == 1 else f"{mag}*{x}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# analysis report
# ---------------------------------------------------------------------------

ANALYSIS_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "levelspectra analysis report",
    "type": "object",
    "required": ["n", "levels", "l_max", "level_index", "h_value", "row_sums",
                 "spectrum", "rho", "energy", "mul_zero_exact", "bounds"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "levels": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "l_max": {"type": "integer", "minimum": 0},
        "level_index": {"type": "integer", "minimum": 0},
        "h_value": {"type": "integer", "minimum": 0},
        "row_sums": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "spectrum": {
            "type": "object",
            "required": ["values", "clusters", "rho", "energy"],
            "properties": {
                "values": {"type": "array", "items": {"type": "number"}},
                "clusters": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["value", "multiplicity"],
                        "properties": {
                            "value": {"type": "number"},
                            "multiplicity": {"type": "integer", "minimum": 1},
                        },
                    },
                },
                "rho": {"type": "number"},
                "energy": {"type": "number"},
            },
        },
        "rho": {"type": "number"},
        "energy": {"type": "number"},
        "mul_zero_exact": {"type": "integer", "minimum": 0},
        "charpoly": {
            "type": ["array", "null"],
            "items": {"type": "string", "pattern": "^-?[0-9]+$"},
        },
        "bounds": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "lhs", "rhs", "relation", "slack", "satisfied"],
                "properties": {
                    "name": {"type": "string"},
                    "lhs": {"type": "number"},
                    "rhs": {
                        "oneOf": [
                            {"type": "number"},
                            {"type": "array", "items": {"type": "number"},
                             "minItems": 2, "maxItems": 2},
                        ]
                    },
                    "relation": {"enum": ["<=", ">=", "==", "in"]},
                    "slack": {"type": "number"},
                    "satisfied": {"type": "boolean"},
                    "equality_expected": {"type": ["boolean", "null"]},
                },
            },
        },
        "extras": {"type": "object"},
    },
}


@dataclass
class AnalysisReport:
    """Everything the analyzer knows about one tree."""

    tree: RootedTree
    matrix: LevelMatrix
    spectrum: Spectrum
    mul_zero_exact: int
    charpoly: CharPoly | None
    bounds: list[BoundReport]
    extras: dict

    @classmethod
    def build(cls, tree: RootedTree, include_charpoly: bool = False,
              bound_names=None, tol: float = DEFAULT_CLUSTER_TOL,
              method: str = "ql", extras: dict | None = None) -> "AnalysisReport":
        data = SpectralData.from_tree(tree, tol=tol, method=method)
        reports = [] if bound_names == [] else bounds_mod.evaluate_checks(data, bound_names)
        return cls(
            tree=tree,
            matrix=data.matrix,
            spectrum=data.spectrum,
            mul_zero_exact=exact_zero_multiplicity(data.matrix),
            charpoly=characteristic_polynomial(data.matrix) if include_charpoly else None,
            bounds=reports,
            extras=extras or {},
        )

    def to_dict(self) -> dict:
        lev = levels(self.tree)
        return {
            "n": self.tree.n,
            "levels": [int(v) for v in lev],
            "l_max": self.matrix.l_max,
            "level_index": self.matrix.level_index,
            "h_value": self.matrix.h_value,
            "row_sums": [int(v) for v in self.matrix.row_sums],
            "spectrum": self.spectrum.to_dict(),
            "rho": float(self.spectrum.rho),
            "energy": float(self.spectrum.energy),
            "mul_zero_exact": self.mul_zero_exact,
            "charpoly": [str(c) for c in self.charpoly.coeffs] if self.charpoly else None,
            "bounds": [r.to_dict() for r in self.bounds],
            "extras": self.extras,
        }

    def to_text(self) -> str:
        lev = levels(self.tree)
        lines = [
            f"vertices:      {self.tree.n}",
            f"levels:        {' '.join(str(int(v)) for v in lev)}",
            f"l_max:         {self.matrix.l_max}",
            f"level index:   {self.matrix.level_index}",
            f"H:             {self.matrix.h_value}",
            f"row sums:      {' '.join(str(int(v)) for v in self.matrix.row_sums)}",
            f"rho:           {_fmt(self.spectrum.rho)}",
            f"energy:        {_fmt(self.spectrum.energy)}",
            f"mul(0) exact:  {self.mul_zero_exact}",
            "eigenvalues:   " + " ".join(_fmt(v) for v in self.spectrum.values),
            "clusters:      " + ", ".join(
                f"{_fmt(v)} (x{m})" for v, m in self.spectrum.clusters),
        ]
        if self.charpoly is not None:
            lines.append(f"charpoly:      {polynomial_text(self.charpoly)}")
        for key, value in self.extras.items():
            shown = _fmt(value) if isinstance(value, float) else str(value)
            lines.append(f"{key + ':':15s}{shown}")
        if self.bounds:
            lines.append("")
            lines.append(f"{'bound':26s} {'rel':3s} {'lhs':>15s} "
                         f"{'rhs':>28s} {'slack':>12s}  ok")
            for r in self.bounds:
                rhs = (f"[{_fmt(r.rhs[0])}, {_fmt(r.rhs[1])}]"
                       if isinstance(r.rhs, tuple) else _fmt(r.rhs))
                flag = "yes" if r.satisfied else "NO"
                if r.equality_expected:
                    flag += " (=)"
                lines.append(f"{r.name:26s} {r.relation:3s} {_fmt(r.lhs):>15s} "
                             f"{rhs:>28s} {_fmt(r.slack):>12s}  {flag}")
        return "\n".join(lines) + "\n"

    def bounds_csv(self) -> str:
        lines = ["name,relation,lhs,rhs,slack,satisfied,equality_expected"]
        for r in self.bounds:
            rhs = (f"{_fmt(r.rhs[0])}..{_fmt(r.rhs[1])}"
                   if isinstance(r.rhs, tuple) else _fmt(r.rhs))
            eq = "" if r.equality_expected is None else str(r.equality_expected).lower()
            lines.append(f"{r.name},{r.relation},{_fmt(r.lhs)},{rhs},"
                         f"{_fmt(r.slack)},{str(r.satisfied).lower()},{eq}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 64
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="level-spectra",
                     description="Spectral analysis of rooted-tree level matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_tol(p):
        p.add_argument("--tol", type=float, default=DEFAULT_CLUSTER_TOL,
                       help="clustering/comparison tolerance override")

    p_analyze = sub.add_parser("analyze", help="analyze one tree file")
    p_analyze.add_argument("path")
    p_analyze.add_argument("--format", choices=["text", "json", "csv", "dot", "treefile"],
                           default="text")
    p_analyze.add_argument("--charpoly", action="store_true",
                           help="include the exact characteristic polynomial")
    p_analyze.add_argument("--bounds", default="all", metavar="all|none|NAMES",
                           help="comma-separated bound checks to evaluate")
    p_analyze.add_argument("--method", choices=["ql", "jacobi"], default="ql")
    add_tol(p_analyze)

    p_charpoly = sub.add_parser("charpoly", help="exact characteristic polynomial")
    p_charpoly.add_argument("path")
    p_charpoly.add_argument("--format", choices=["text", "json"], default="text")
    p_charpoly.add_argument("--cap", type=int, default=DEFAULT_CHARPOLY_CAP)

    p_verify = sub.add_parser("verify", help="verify all claims at one order")
    p_verify.add_argument("--order", type=int, required=True)
    p_verify.add_argument("--only", default=None, metavar="NAMES",
                          help="comma-separated subset of checks")
    p_verify.add_argument("--jobs", type=int, default=None,
                          help="worker processes (default: available parallelism)")
    p_verify.add_argument("--out", default=None, help="write the ledger to a file")
    p_verify.add_argument("--format", choices=["text", "json"], default="text")
    add_tol(p_verify)

    p_extremal = sub.add_parser("extremal", help="arg-extreme tree of a statistic")
    p_extremal.add_argument("--order", type=int, required=True)
    p_extremal.add_argument("--stat", choices=["rho", "energy"], required=True)
    direction = p_extremal.add_mutually_exclusive_group(required=True)
    direction.add_argument("--min", action="store_true")
    direction.add_argument("--max", action="store_true")
    p_extremal.add_argument("--expect", choices=["star", "path"], default=None,
                            help="assert the extreme tree is this family")
    add_tol(p_extremal)

    p_special = sub.add_parser("special", help="analyze a named family member")
    p_special.add_argument("family", choices=["star", "path", "leafstar", "dary"])
    p_special.add_argument("--order", type=int, default=None)
    p_special.add_argument("--arity", type=int, default=None, help="dary only")
    p_special.add_argument("--height", type=int, default=None, help="dary only")
    p_special.add_argument("--format", choices=["text", "json"], default="text")
    p_special.add_argument("--charpoly", action="store_true")
    p_special.add_argument("--bounds", default="none", metavar="all|none|NAMES")
    add_tol(p_special)

    return parser


def _parse_bound_selection(spec: str):
    if spec == "all":
        return None
    if spec == "none":
        return []
    names = [s.strip() for s in spec.split(",") if s.strip()]
    for name in names:
        if name not in bounds_mod.CHECKS:
            raise _UsageError(
                f"unknown bound check {name!r}; known: {sorted(bounds_mod.CHECKS)}")
    return names


def _read_tree(path: str) -> RootedTree:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tree(fh.read())


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_analyze(args) -> int:
    tree = _read_tree(args.path)
    if args.format == "dot":
        sys.stdout.write(to_dot(tree))
        return EXIT_OK
    if args.format == "treefile":
        sys.stdout.write(format_tree(canonicalize(tree)))
        return EXIT_OK
    report = AnalysisReport.build(
        tree,
        include_charpoly=args.charpoly,
        bound_names=_parse_bound_selection(args.bounds),
        tol=args.tol,
        method=args.method,
    )
    if args.format == "json":
        json.dump(report.to_dict(), sys.stdout, indent=2)
        sys.stdout.write("\n")
    elif args.format == "csv":
        sys.stdout.write(report.bounds_csv())
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK


def _cmd_charpoly(args) -> int:
    tree = _read_tree(args.path)
    poly = characteristic_polynomial(build_level_matrix(tree), cap=args.cap)
    if args.format == "json":
        sys.stdout.write(poly.to_json() + "\n")
    else:
        sys.stdout.write(polynomial_text(poly) + "\n")
        sys.stdout.write("coefficients: " + " ".join(str(c) for c in poly.coeffs) + "\n")
    return EXIT_OK


def _cmd_verify(args) -> int:
    selection = None
    if args.only:
        selection = [s.strip() for s in args.only.split(",") if s.strip()]
        known = set(verify_mod.available_checks())
        for name in selection:
            if name not in known:
                raise _UsageError(f"unknown check {name!r}; known: {sorted(known)}")
    ledger = verify_mod.verify_order(args.order, selection=selection,
                                     jobs=args.jobs, tol=args.tol)
    payload = (json.dumps(ledger.to_dict(), indent=2) + "\n"
               if args.format == "json" else ledger.to_text())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_OK if ledger.violations == 0 else EXIT_VIOLATIONS


def _cmd_extremal(args) -> int:
    sweep = verify_mod.extremal_sweep(args.order, args.stat, tol=args.tol)
    if args.min:
        tree, value, gap = sweep.min_tree, sweep.min_value, sweep.min_gap
        matches = {"star": sweep.min_is_star, "path": is_rooted_path(tree)}
    else:
        tree, value, gap = sweep.max_tree, sweep.max_value, sweep.max_gap
        matches = {"star": is_rooted_star(tree), "path": sweep.max_is_path}
    seq = " ".join(str(v) for v in canonical_level_sequence(tree))
    direction = "min" if args.min else "max"
    sys.stdout.write(
        f"{direction} {args.stat} at order {args.order}: {_fmt(value)}\n"
        f"tree (level sequence): {seq}\n"
        f"uniqueness gap: {_fmt(gap)}\n"
    )
    if args.expect is not None:
        if not matches[args.expect]:
            sys.stdout.write(f"expectation FAILED: extreme tree is not the {args.expect}\n")
            return EXIT_VIOLATIONS
        sys.stdout.write(f"expectation holds: extreme tree is the {args.expect}\n")
    return EXIT_OK


def _cmd_special(args) -> int:
    if args.family == "dary":
        if args.arity is None or args.height is None:
            raise _UsageError("dary needs --arity and --height")
        tree = complete_dary(args.arity, args.height)
        extras = {"family": f"complete {args.arity}-ary, height {args.height}"}
    else:
        if args.order is None:
            raise _UsageError(f"{args.family} needs --order")
        maker = {"star": rooted_star, "path": rooted_path,
                 "leafstar": star_rooted_at_leaf}[args.family]
        tree = maker(args.order)
        extras = {"family": f"{args.family} of order {args.order}"}
    report = AnalysisReport.build(
        tree,
        include_charpoly=args.charpoly,
        bound_names=_parse_bound_selection(args.bounds),
        tol=args.tol,
        extras=extras,
    )
    if args.family == "path":
        closed = path_rho_closed_form(tree.n)
        report.extras["closed_form_rho"] = _fmt(closed)
        report.extras["closed_form_residual"] = _fmt(abs(closed - report.spectrum.rho))
    elif args.family == "leafstar":
        roots = leafstar_cubic_roots(tree.n)
        nonzero = report.spectrum.values[np.argsort(-np.abs(report.spectrum.values))][:3]
        residual = float(np.abs(np.sort(roots) - np.sort(nonzero)).max())
        report.extras["cubic_roots"] = " ".join(_fmt(r) for r in sorted(roots, reverse=True))
        report.extras["cubic_residual"] = _fmt(residual)
    if args.format == "json":
        json.dump(report.to_dict(), sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

_DISPATCH = {
    "analyze": _cmd_analyze,
    "charpoly": _cmd_charpoly,
    "verify": _cmd_verify,
    "extremal": _cmd_extremal,
    "special": _cmd_special,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "tol", 1.0) <= 0:
            raise _UsageError("--tol must be positive")
        return _DISPATCH[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except LevelSpectraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
