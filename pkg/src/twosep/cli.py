"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 input parse error, 3 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import families as fam
from .bench import bench_family, write_csv
from .checks import run_verification
from .forests import (
    ConsistencyError,
    EnumerationCapError,
    count_2forests_det,
    count_trees_det,
    enumerate_2forests,
    enumerate_trees,
)
from .graph import EdgeListParseError, GraphError, MultiGraph, connected, format_edge_list, parse_edge_list
from .linalg import decimal_string
from .resistance import resistance_pinv
from .separation import Solver, find_2separators, find_cut_vertices

METHODS = ("det", "reduce", "enumerate", "pinv", "closed-form")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


# -- input ---------------------------------------------------------------------------


def _load(args) -> tuple[MultiGraph, str, fam.FamilySpec | None]:
    has_file = getattr(args, "file", None) is not None
    has_family = getattr(args, "family", None) is not None
    if has_file == has_family:
        raise UsageError("give exactly one input: FILE or --family/--n")
    if has_family:
        if args.n is None:
            raise UsageError("--family needs --n")
        spec = fam.FamilySpec(args.family, args.n, args.k)
        return spec.graph(), spec.describe(), spec
    path = args.file
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return parse_edge_list(text), path, None
    except EdgeListParseError as exc:
        raise InputError(f"{path}: {exc}") from None


# -- output ----------------------------------------------------------------------------


def _int_result(value: int) -> dict:
    return {"integer": str(value)}


def _ratio_result(value: Fraction, digits: int) -> dict:
    return {
        "numerator": str(value.numerator),
        "denominator": str(value.denominator),
        "decimal": decimal_string(value, digits),
    }


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=False))
    else:
        print(text)


# -- counting commands ------------------------------------------------------------------


def _closed_trees(spec: fam.FamilySpec) -> int:
    if spec.family == "sierpinski":
        return fam.sierpinski_trees(spec.n)
    return fam.straight_trees(spec.n)


def _closed_forests(spec: fam.FamilySpec, u: int, v: int) -> int:
    if spec.family == "straight":
        return fam.straight_forest_closed(u, v, spec.n)
    if spec.family == "bent":
        return fam.bent_forest(u, v, spec.n, spec.k)
    if {u, v} <= set(fam.SIERPINSKI_CORNERS):
        return fam.sierpinski_corner_forests(spec.n)
    raise UsageError("closed forms for the Sierpinski triangle cover corner pairs (1, 2, 3) only")


def _count(method: str, g: MultiGraph, spec, query: tuple) -> int:
    if method == "det":
        return count_trees_det(g) if query[0] == "trees" else count_2forests_det(g, *query[1:])
    if method == "reduce":
        if not connected(g):
            return count_trees_det(g) if query[0] == "trees" else count_2forests_det(g, *query[1:])
        s = Solver()
        return s.trees(g) if query[0] == "trees" else s.forests(g, *query[1:])
    if method == "enumerate":
        return enumerate_trees(g) if query[0] == "trees" else enumerate_2forests(g, *query[1:])
    if method == "closed-form":
        if spec is None:
            raise UsageError("--method closed-form needs a --family input")
        return _closed_trees(spec) if query[0] == "trees" else _closed_forests(spec, *query[1:])
    raise UsageError(f"method {method!r} does not apply to this command")


def cmd_trees(args) -> int:
    g, label, spec = _load(args)
    value = _count(args.method, g, spec, ("trees",))
    _emit(args, {"op": "trees", "input": label, "method": args.method, "result": _int_result(value)}, str(value))
    return 0


def cmd_forests(args) -> int:
    g, label, spec = _load(args)
    value = _count(args.method, g, spec, ("forests", args.u, args.v))
    payload = {"op": "forests", "input": label, "method": args.method, "result": _int_result(value)}
    _emit(args, payload, str(value))
    return 0


def cmd_resistance(args) -> int:
    g, label, spec = _load(args)
    if not connected(g):
        raise GraphError("resistance is undefined on a disconnected graph")
    if args.u == args.v:
        raise GraphError("u and v must differ")
    for x in (args.u, args.v):
        if not 1 <= x <= g.n:
            raise GraphError(f"vertex {x} out of range 1..{g.n}")
    payload = {"op": "resistance", "input": label, "method": args.method}
    if args.method == "pinv":
        x = resistance_pinv(g, args.u, args.v)
        payload["result"] = {"decimal": repr(x)}
        _emit(args, payload, repr(x))
        return 0
    if args.method == "closed-form" and spec is not None and spec.family == "straight":
        u, v = sorted((args.u, args.v))
        value = fam.straight_resistance_closed(u, v - u, spec.n)
        payload["result"] = _ratio_result(value, args.digits)
        _emit(args, payload, f"{value.numerator}/{value.denominator} = {decimal_string(value, args.digits)}")
        return 0
    forests = _count(args.method, g, spec, ("forests", args.u, args.v))
    trees = _count(args.method, g, spec, ("trees",))
    value = Fraction(forests, trees)
    payload["result"] = _ratio_result(value, args.digits)
    _emit(args, payload, f"{forests}/{trees} = {decimal_string(value, args.digits)}")
    return 0


def cmd_decompose(args) -> int:
    g, label, _ = _load(args)
    if not connected(g):
        raise GraphError("decompose requires a connected graph")
    cuts = sorted(find_cut_vertices(g))
    seps = find_2separators(g) if not cuts else []
    if args.u is not None and args.v is not None:
        query = ("forests", args.u, args.v)
    elif args.u is None and args.v is None:
        query = ("trees",)
    else:
        raise UsageError("give both -u and -v, or neither")
    value, trace = Solver(threshold=args.threshold).solve(g, query)
    payload = {
        "op": "decompose",
        "input": label,
        "method": "reduce",
        "result": _int_result(value),
        "cut_vertices": cuts,
        "separators": [list(p) for p in seps],
        "trace": trace.to_dict(),
    }
    lines = [
        "cut vertices: " + (" ".join(map(str, cuts)) if cuts else "none"),
        "2-separators: " + (" ".join(f"{{{i},{j}}}" for i, j in seps) if seps else "none"),
        "reduction trace:",
        trace.to_text(),
    ]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_gen(args) -> int:
    spec = fam.FamilySpec(args.family, args.n, args.k)
    text = format_edge_list(spec.graph())
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


CLOSED_QUERIES = {
    "straight": ("trees", "forests", "forests-sum", "resistance"),
    "bent": ("trees", "forests", "resistance", "end-resistance"),
    "sierpinski": ("trees", "corner-forests", "corner-resistance"),
}


def cmd_closed_form(args) -> int:
    family, q, n = args.family, args.query, args.n
    if q not in CLOSED_QUERIES[family]:
        raise UsageError(f"query {q!r} not available for {family}; choose from {', '.join(CLOSED_QUERIES[family])}")
    if family == "bent" and args.k is None:
        raise UsageError("bent family needs --k")
    needs_pair = q in ("forests", "forests-sum", "resistance")
    if needs_pair and (args.u is None or args.v is None):
        raise UsageError(f"query {q!r} needs -u and -v")
    value: int | Fraction
    if q == "trees":
        value = fam.sierpinski_trees(n) if family == "sierpinski" else fam.straight_trees(n)
    elif q == "forests":
        value = (
            fam.straight_forest_closed(args.u, args.v, n)
            if family == "straight"
            else fam.bent_forest(args.u, args.v, n, args.k)
        )
    elif q == "forests-sum":
        value = fam.straight_forest_sum(args.u, args.v, n)
    elif q == "resistance":
        u, v = sorted((args.u, args.v))
        value = (
            fam.straight_resistance_closed(u, v - u, n)
            if family == "straight"
            else fam.bent_resistance(u, v, n, args.k)
        )
    elif q == "end-resistance":
        value = fam.bent_end_resistance(n, args.k)
    elif q == "corner-forests":
        value = fam.sierpinski_corner_forests(n)
    else:
        value = fam.sierpinski_corner_resistance(n)
    label = fam.FamilySpec(family, n, args.k).describe()
    payload = {"op": "closed-form", "input": label, "method": "closed-form", "query": q}
    if isinstance(value, Fraction):
        payload["result"] = _ratio_result(value, args.digits)
        text = f"{value.numerator}/{value.denominator} = {decimal_string(value, args.digits)}"
    else:
        payload["result"] = _int_result(value)
        text = str(value)
    _emit(args, payload, text)
    return 0


def cmd_verify(args) -> int:
    results = run_verification(max_n=args.max_n, random_count=args.random, seed=args.seed)
    passed = sum(r.passed for r in results)
    failed = sum(r.failed for r in results)
    payload = {
        "op": "verify",
        "input": f"corpus(max_n={args.max_n},random={args.random},seed={args.seed})",
        "method": "enumerate+det+reduce+closed-form",
        "result": {"passed": passed, "failed": failed},
        "checks": [r.to_dict() for r in results],
    }
    lines = []
    for r in results:
        status = "PASS" if r.failed == 0 else "FAIL"
        lines.append(f"{status} {r.name}: {r.passed} passed, {r.failed} failed")
        lines.extend(f"    {f}" for f in r.failures)
    lines.append(f"total: {passed} passed, {failed} failed")
    _emit(args, payload, "\n".join(lines))
    return 0 if failed == 0 else 3


def _parse_range(text: str) -> range:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"--n-range must look like A..B, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return range(lo, hi + 1)


def cmd_bench(args) -> int:
    ns = _parse_range(args.n_range)[:: args.step]
    if args.family == "bent" and args.k is None:
        raise UsageError("bent family needs --k")
    rows = bench_family(args.family, ns, args.k)
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            write_csv(rows, fh)
    payload = {
        "op": "bench",
        "input": f"{args.family}(n={args.n_range})",
        "method": "det+reduce",
        "result": {"all_match": all(r.matches for r in rows)},
        "rows": [
            {**r.__dict__, "seconds": round(r.seconds, 6)} for r in rows
        ],
    }
    header = f"{'n':>5} {'query':<10} {'method':<7} {'seconds':>10} {'mults':>12}  match"
    lines = [header]
    for r in rows:
        lines.append(
            f"{r.n:>5} {r.query:<10} {r.method:<7} {r.seconds:>10.4f} {r.multiplications:>12}  {'yes' if r.matches else 'NO'}"
        )
    _emit(args, payload, "\n".join(lines))
    return 0 if all(r.matches for r in rows) else 3


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twosep", description="Exact spanning tree / 2-forest counts and resistance distances.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, default_method="reduce", methods=("det", "reduce", "enumerate", "closed-form")):
        sp.add_argument("file", nargs="?", help="edge-list file, or - for stdin")
        sp.add_argument("--family", choices=fam.FAMILIES)
        sp.add_argument("--n", type=int)
        sp.add_argument("--k", type=int)
        sp.add_argument("--method", choices=methods, default=default_method)
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("trees", help="count spanning trees")
    common(sp)
    sp.set_defaults(func=cmd_trees)

    sp = sub.add_parser("forests", help="count spanning 2-forests separating u and v")
    common(sp)
    sp.add_argument("-u", type=int, required=True)
    sp.add_argument("-v", type=int, required=True)
    sp.set_defaults(func=cmd_forests)

    sp = sub.add_parser("resistance", help="resistance distance between u and v")
    common(sp, methods=METHODS)
    sp.add_argument("-u", type=int, required=True)
    sp.add_argument("-v", type=int, required=True)
    sp.add_argument("--digits", type=int, default=12)
    sp.set_defaults(func=cmd_resistance)

    sp = sub.add_parser("decompose", help="cut vertices, 2-separators and a reduction trace")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--family", choices=fam.FAMILIES)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("-u", type=int)
    sp.add_argument("-v", type=int)
    sp.add_argument("--threshold", type=int, default=8)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("gen", help="write a family member as an edge list")
    sp.add_argument("--family", choices=fam.FAMILIES, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("closed-form", help="evaluate a family closed form")
    sp.add_argument("--family", choices=fam.FAMILIES, required=True)
    sp.add_argument("--query", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("-u", type=int)
    sp.add_argument("-v", type=int)
    sp.add_argument("--digits", type=int, default=12)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_closed_form)

    sp = sub.add_parser("verify", help="cross-check enumeration, determinant, reduction and closed forms")
    sp.add_argument("--max-n", type=int, default=5)
    sp.add_argument("--random", type=int, default=40)
    sp.add_argument("--seed", type=int, default=2024)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="time determinant vs reduction on a family")
    sp.add_argument("--family", choices=fam.FAMILIES, required=True)
    sp.add_argument("--n-range", required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--step", type=int, default=1)
    sp.add_argument("--csv")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_bench)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        return args.func(args)
    except UsageError as exc:
        print(f"twosep: usage error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"twosep: input error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"twosep: internal consistency failure: {exc}", file=sys.stderr)
        return 3
    except EnumerationCapError as exc:
        print(f"twosep: usage error: {exc}", file=sys.stderr)
        return 1
    except GraphError as exc:
        print(f"twosep: usage error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
