"""Command line entry point: ``qlines <subcommand> ...``.

stdout carries data only (JSON unless ``--emit`` says otherwise); errors go to
stderr as a JSON object. Exit codes: 0 success, 2 input error, 3 time budget
exhausted (the partial report is still written to stdout).
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from contextlib import redirect_stderr, redirect_stdout

from .betweenness import (
    Betweenness, CapExceeded, betweenness_of, lines_of, maximal_geodesics, property_one_violations,
    property_two_violations, symmetric_pairs, validate_four_point_implications,
)
from .constructions import PartitionTriple, construct
from .enumeration import BudgetExhausted, SearchConfig, classify_constructions, enumerate_betweennesses
from .isomorphism import TooLarge, betweenness_isomorphic, canonical_form, census
from .partitions import end_swap_classes, p3, rotation_classes
from .realizability import MODES, PropertyViolation, RealizabilityProblem, realize
from .space import AxiomViolation, NotStronglyConnected, QuasimetricSpace, WeightedDigraph, shortest_path_space

BUDGET_ENV = "QLINES_BUDGET_SECS"


class InputError(Exception):
    def __init__(self, kind: str, message: str, **where):
        super().__init__(message)
        self.kind = kind
        self.where = where


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError("usage", message)


def _parse_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("json", exc.msg, source=source, line=exc.lineno, column=exc.colno) from None


def _read(path: str | None, stdin) -> tuple[str, str]:
    if path is None or path == "-":
        return stdin.read(), "<stdin>"
    try:
        with open(path) as fh:
            return fh.read(), path
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError("io", str(exc), source=path) from None


def _load_betweenness(text: str, source: str) -> Betweenness:
    obj = _parse_json(text, source)
    try:
        return Betweenness.from_json_obj(obj)
    except (ValueError, TypeError) as exc:
        raise InputError("schema", str(exc), source=source) from None


def _load_space_or_relation(text: str, source: str):
    """Digraph JSON, betweenness JSON, or a distance matrix in TSV."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        obj = _parse_json(text, source)
        try:
            if "arcs" in obj:
                return shortest_path_space(WeightedDigraph.from_json_obj(obj))
            return Betweenness.from_json_obj(obj)
        except NotStronglyConnected as exc:
            raise InputError("not_strongly_connected", str(exc), source=source) from None
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError("schema", str(exc), source=source) from None
    try:
        return QuasimetricSpace.from_tsv(text)
    except AxiomViolation as exc:
        raise InputError("axiom", str(exc), source=source, axiom=exc.kind,
                         witness=list(exc.witness)) from None
    except ValueError as exc:
        raise InputError("tsv", str(exc), source=source) from None


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=False) + "\n")


# -- subcommands --------------------------------------------------------------

def cmd_construct(args, stdin, out) -> int:
    try:
        t = PartitionTriple(args.p, args.q, args.r)
    except ValueError as exc:
        raise InputError("usage", str(exc)) from None
    g = construct(args.family, t, args.c)
    if args.emit == "dot":
        out.write(g.to_dot(args.family))
    elif args.emit == "tsv":
        out.write(shortest_path_space(g).to_tsv())
    else:
        _emit_json(g.to_json_obj(), out)
    return 0


def cmd_analyze(args, stdin, out) -> int:
    text, source = _read(args.input, stdin)
    obj = _load_space_or_relation(text, source)
    b = obj if isinstance(obj, Betweenness) else betweenness_of(obj)
    what = args.what
    if what == "betweenness":
        _emit_json(b.to_json_obj(), out)
    elif what == "lines":
        _emit_json(lines_of(b).to_json_obj(), out)
    elif what == "geodesics":
        _emit_json(sorted(list(g) for g in maximal_geodesics(b)), out)
    elif what == "symmetric":
        _emit_json(sorted(sorted(p) for p in symmetric_pairs(b)), out)
    elif what == "validate":
        _emit_json({
            "property_one": [[list(a), list(c)] for a, c in property_one_violations(b)],
            "property_two": [[list(q), side] for q, side in property_two_violations(b)],
            "four_point": [
                {"rule": v["rule"], "points": list(v["points"]), "missing": [list(t) for t in v["missing"]]}
                for v in validate_four_point_implications(b)
            ],
        }, out)
    elif what == "canonical":
        _emit_json(canonical_form(b).to_json_obj(), out)
    elif what == "distances":
        if isinstance(obj, Betweenness):
            raise InputError("usage", "distances need a digraph or distance matrix, not a betweenness")
        out.write(obj.to_tsv())
    return 0


def cmd_iso(args, stdin, out) -> int:
    a = _load_betweenness(*_read(args.a, stdin))
    b = _load_betweenness(*_read(args.b, stdin))
    if a.n != b.n:
        _emit_json({"isomorphic": False, "bijection": None}, out)
        return 0
    phi = betweenness_isomorphic(a, b)
    _emit_json({"isomorphic": phi is not None, "bijection": None if phi is None else list(phi)}, out)
    return 0


def cmd_realize(args, stdin, out) -> int:
    b = _load_betweenness(*_read(args.input, stdin))
    try:
        cert = realize(RealizabilityProblem(b, args.mode))
    except PropertyViolation as exc:
        raise InputError("property_violation", str(exc),
                         witnesses=[[list(a), list(c)] for a, c in exc.violations[:10]]) from None
    _emit_json(cert.to_json_obj(), out)
    return 0


def _budget(args) -> float | None:
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise InputError("env", f"{BUDGET_ENV} must be a number of seconds, got {env!r}") from None
    return args.budget


def cmd_classify(args, stdin, out) -> int:
    if args.family:
        report = classify_constructions(args.n, args.family)
        _emit_json(report.to_json_obj(), out)
        return 0
    try:
        cfg = SearchConfig(args.n, args.lines, not args.allow_universal, args.mode, _budget(args))
    except ValueError as exc:
        raise InputError("usage", str(exc)) from None
    try:
        report = enumerate_betweennesses(cfg)
    except BudgetExhausted as exc:
        _emit_json(exc.report.to_json_obj(), out)
        return 3
    _emit_json(report.to_json_obj(), out)
    return 0


def cmd_census(args, stdin, out) -> int:
    if args.input is not None:
        obj = _parse_json(*_read(args.input, stdin))
        if not isinstance(obj, list):
            raise InputError("schema", "census input must be a JSON array of betweennesses")
        try:
            bs = [Betweenness.from_json_obj(o) for o in obj]
            counts = census(bs)
        except ValueError as exc:
            raise InputError("schema", str(exc)) from None
        _emit_json([{"canonical": cf.to_json_obj(), "count": c} for cf, c in counts.items()], out)
        return 0
    if args.family is None or args.n is None:
        raise InputError("usage", "census needs either --input or both --family and --n")
    report = classify_constructions(args.n, args.family)
    n = args.n
    summary = {"family": args.family, "n": n, "classes": len(report.classes)}
    if args.family == "C":
        summary["p3_n"] = p3(n)
    else:
        summary["two_p3_n_minus_1"] = 2 * p3(n - 1)
        summary["D1_rotation_classes"] = rotation_classes(n - 1)
        summary["D2_end_swap_classes"] = end_swap_classes(n - 1)
    _emit_json(summary, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qlines", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="emit a construction digraph")
    p.add_argument("--family", choices=("C", "D1", "D2"), required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--c", type=int, default=None, help="override the heavy-arc constant")
    p.add_argument("--emit", choices=("json", "dot", "tsv"), default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="betweenness, lines, geodesics of a space")
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("--what", choices=("betweenness", "lines", "geodesics", "symmetric",
                                      "validate", "canonical", "distances"), default="lines")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("iso", help="test two betweennesses for isomorphism")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("realize", help="decide realizability by exact LP")
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("--mode", choices=MODES, default="quasimetric")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("classify", help="enumerate realizable betweennesses")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lines", type=int, default=None)
    p.add_argument("--mode", choices=MODES, default="quasimetric")
    p.add_argument("--budget", type=float, default=1800.0)
    p.add_argument("--allow-universal", action="store_true")
    p.add_argument("--family", choices=("C", "D"), default=None,
                   help="census of the parameterised constructions instead of a search")
    p.add_argument("--jobs", type=int, default=1, help="accepted for compatibility; search is serial")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", help="isomorphism-class counts")
    p.add_argument("--family", choices=("C", "D"), default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--input", default=None, help="JSON array of betweennesses ('-' for stdin)")
    p.set_defaults(func=cmd_census)
    return parser


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        parser = build_parser()
        with redirect_stdout(stderr):  # argparse --help text is not data
            args = parser.parse_args(argv)
        return args.func(args, stdin, stdout)
    except InputError as exc:
        stderr.write(json.dumps({"error": exc.kind, "message": str(exc), **exc.where}) + "\n")
        return 2
    except (TooLarge, CapExceeded) as exc:
        stderr.write(json.dumps({"error": "too_large", "message": str(exc)}) + "\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def run(argv: list[str], stdin: bytes = b"") -> tuple[int, bytes, bytes]:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stderr(err):
        code = main(argv, io.StringIO(stdin.decode(errors="surrogateescape")), out, err)
    return code, out.getvalue().encode(), err.getvalue().encode()


if __name__ == "__main__":
    sys.exit(main())
