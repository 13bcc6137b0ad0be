"""Command-line front end.

Exit codes: 0 success, 1 capacity limit, 2 unreadable or malformed input,
3 invalid argument.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import classify
from .compare import ISOMORPHISM, MORITA, compare
from .elements import ExpressionError, LeavittAlgebra
from .enumeration import small_census
from .graph import DSLError, Graph, StabilizedGraph, mat_n, parse_document, to_dsl
from .ktheory import CapacityError, invariants_json

EXIT_OK, EXIT_CAPACITY, EXIT_PARSE, EXIT_ARG = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARG, f"{self.prog}: error: {message}\n")


def _read_graph(path: str) -> Graph | StabilizedGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DSLError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return parse_document(text)
    except DSLError as exc:
        raise DSLError(f"{exc.message} (in {path})", exc.line, exc.column) from exc


def _special_edges(spec: str | None) -> dict[str, str]:
    if not spec:
        return {}
    out = {}
    for item in spec.split(","):
        v, sep, e = item.partition("=")
        if not sep or not v.strip() or not e.strip():
            raise UsageError(f"bad --special-edges item {item!r}; expected v=e")
        out[v.strip()] = e.strip()
    return out


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def _kv(d: dict, indent: str = "") -> str:
    lines = []
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_kv(v, indent + "  "))
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def cmd_parse(args) -> int:
    g = _read_graph(args.file)
    base = g.base if isinstance(g, StabilizedGraph) else g
    payload = {
        "name": base.name,
        "stabilized": isinstance(g, StabilizedGraph),
        "vertices": list(base.vertices),
        "edges": [{"id": e.id, "source": e.source, "range": e.range} for e in base.edges],
    }
    _emit(args, payload, to_dsl(g).rstrip("\n"))
    return EXIT_OK


def cmd_classify(args) -> int:
    c = classify(_read_graph(args.file)).to_json()
    _emit(args, c, _kv(c))
    return EXIT_OK


def cmd_invariants(args) -> int:
    inv = invariants_json(_read_graph(args.file))
    _emit(args, inv, _kv(inv))
    return EXIT_OK


def cmd_compare(args) -> int:
    gE = _read_graph(args.fileE)
    gF = _read_graph(args.fileF)
    relation = {"iso": ISOMORPHISM, "morita": MORITA}[args.relation]
    v = compare(gE, gF, relation, args.algebra)
    _emit(args, v.to_json(), f"{v.answer} ({', '.join(v.justifications)})")
    return EXIT_OK


def cmd_transform(args) -> int:
    op = args.op
    if op == "stabilize":
        g = _read_graph(args.file)
        out = g if isinstance(g, StabilizedGraph) else StabilizedGraph(g)
    elif op.startswith("matn="):
        try:
            n = int(op[len("matn="):])
        except ValueError:
            raise UsageError(f"invalid matrix size in {op!r}")
        if n < 1:
            raise UsageError("matn needs N >= 1")
        g = _read_graph(args.file)
        if isinstance(g, StabilizedGraph):
            raise UsageError("matn applies to finite graphs, not stabilized ones")
        out = mat_n(g, n)
    else:
        raise UsageError(f"unknown transform {op!r}; use matn=N or stabilize")
    sys.stdout.write(to_dsl(out))
    return EXIT_OK


def cmd_census(args) -> int:
    report = small_census()
    payload = report.to_json()
    lines = [f"{n} vertices: {c} graphs" for n, c in sorted(report.by_vertices.items())]
    lines.append(f"all det(I - A^t) < 0: {report.all_det_negative}")
    for g, d in zip(report.graphs, report.dets):
        lines.append(f"  {g.name}: det = {d}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_elem(args) -> int:
    g = _read_graph(args.file)
    if isinstance(g, StabilizedGraph):
        raise UsageError("element arithmetic needs a finite graph")
    try:
        algebra = LeavittAlgebra(g, _special_edges(args.special_edges))
    except ValueError as exc:
        raise UsageError(str(exc))
    x = algebra.parse(args.eval)
    print(str(x))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="leavitt", description="Invariants and classification of graph algebras.")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--special-edges", metavar="v=e,...", help="special edge per vertex for element normal forms")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", help="validate a graph file and print it normalized")
    s.add_argument("file")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("classify", help="structural classification")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("invariants", help="K0 with unit class, K1, det(I - A^t)")
    s.add_argument("file")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("compare", help="isomorphism / Morita verdict for two graphs")
    s.add_argument("fileE")
    s.add_argument("fileF")
    s.add_argument("--relation", choices=("iso", "morita"), default="iso")
    s.add_argument("--algebra", choices=("leavitt", "cstar"), default="leavitt")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("transform", help="matrix amplification or stabilization")
    s.add_argument("file")
    s.add_argument("--op", required=True, help="matn=N or stabilize")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("census", help="small purely infinite simple graph census")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("elem", help="normal form of an element expression")
    s.add_argument("file")
    s.add_argument("--eval", required=True, metavar="EXPR")
    s.set_defaults(func=cmd_elem)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DSLError, ExpressionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARG


if __name__ == "__main__":
    sys.exit(main())
