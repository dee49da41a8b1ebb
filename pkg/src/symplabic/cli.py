"""Command-line interface.

Usage errors exit with status 2 (argparse), domain errors with status 1 and a
JSON object ``{"error": ..., "message": ...}`` on stderr.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import acceptance, cells, lie, positivity, quiver, weyl
from .errors import DomainError, ParseError
from .measure import meas, meas_faces
from .moves import is_move_symmetric, sigma, square_move
from .plabic import (
    FaceWeighting,
    Network,
    PlabicGraph,
    complete_weighting,
    from_json,
    to_json,
)
from .scalar import ONE, format_scalar, parse_scalar


# I/O helpers ------------------------------------------------------------------

def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc.msg}") from None


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]", re.S)


def _dump(obj) -> str:
    """Indented JSON with innermost lists (matrix rows, factors) on one line."""
    text = json.dumps(obj, indent=2)
    return _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)


def _lit(x) -> str:
    return format_scalar(x) if not isinstance(x, str) else x


def matrix_to_json(a: list) -> dict:
    return {"n": len(a), "entries": [[_lit(x) for x in row] for row in a]}


def matrix_from_json(obj) -> list:
    try:
        rows = obj["entries"]
        a = [[parse_scalar(str(x)) for x in row] for row in rows]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed matrix JSON: {exc}") from None
    n = obj.get("n", len(a))
    if len(a) != n or any(len(row) != n for row in a):
        raise ParseError("matrix JSON is not n x n")
    return a


def _weighting(g: PlabicGraph, fw: FaceWeighting | None) -> FaceWeighting:
    if fw is None:
        return FaceWeighting({f: ONE for f in g.face_ids()}, "full")
    return complete_weighting(g, fw)


def weighting_to_json(fw: FaceWeighting) -> dict:
    return {"mode": fw.mode, "values": {k: _lit(v) for k, v in fw.items()}}


def spec_to_json(spec: quiver.BracketSpec) -> dict:
    return {
        "names": list(spec.names),
        "faces": {n: spec.face_of.get(n, n) for n in spec.names},
        "coefficients": [[str(c) for c in row] for row in spec.matrix()],
        "relation": {n: e for n, e in spec.relation.items()},
    }


# DOT -------------------------------------------------------------------------

def _q(s: str) -> str:
    return '"' + str(s).replace('"', r'\"') + '"'


def graph_to_dot(g: PlabicGraph, net: Network | None = None) -> str:
    lines = ["digraph plabic {" if net is not None else "graph plabic {",
             "  node [shape=circle, width=0.12, label=\"\", style=filled];"]
    arrow = "->" if net is not None else "--"
    for v, (x, y, c) in g.vertex_table().items():
        pos = f"{float(x):.4f},{float(y):.4f}!"
        if c is None:
            lines.append(f"  {_q(v)} [shape=point, pos={_q(pos)}, xlabel={_q(v)}];")
        else:
            fill = "black" if c == "black" else "white"
            lines.append(f"  {_q(v)} [fillcolor={fill}, pos={_q(pos)}];")
    for k, (u, v) in enumerate(g.edges):
        if net is not None:
            u, v = net.arc(k)
            lines.append(f"  {_q(u)} {arrow} {_q(v)} [label={_q(_lit(net.weights[k]))}];")
        else:
            lines.append(f"  {_q(u)} {arrow} {_q(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_to_dot(q: quiver.Quiver) -> str:
    lines = ["digraph quiver {", "  node [shape=box];"]
    for f in q.vertices:
        lines.append(f"  {_q(f)};")
    for e in q.edges:
        style = " [style=dashed]" if e.half else ""
        lines.append(f"  {_q(e.source)} -> {_q(e.target)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# subcommands -------------------------------------------------------------------

def cmd_meas(args) -> int:
    g, net, fw = from_json(_read_json(args.graph))
    if net is not None and fw is None:
        a = meas(net)
    else:
        a = meas_faces(g, _weighting(g, fw))
    print(_dump(matrix_to_json(a)))
    return 0


def cmd_move(args) -> int:
    g, _net, fw = from_json(_read_json(args.graph))
    g2, fw2 = square_move(g, args.face, _weighting(g, fw))
    text = _dump(to_json(g2, fw=fw2)) + "\n"
    out = args.output or args.graph
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
    return 0


def cmd_sigma(args) -> int:
    g, _net, fw = from_json(_read_json(args.graph))
    print(_dump(weighting_to_json(sigma(g, _weighting(g, fw)))))
    return 0


def cmd_check_ms(args) -> int:
    g, _net, fw = from_json(_read_json(args.graph))
    ok = is_move_symmetric(g, fw)
    print("yes" if ok else "no")
    return 0 if ok else 1


def cmd_quiver(args) -> int:
    g, _net, _fw = from_json(_read_json(args.graph))
    if args.fold:
        spec = quiver.folded_bracket(g)
    elif args.average:
        spec = quiver.averaged_bracket(g)
    else:
        spec = quiver.face_bracket(g)
    print(_dump(spec_to_json(spec)))
    return 0


def _context(kind: str, rank: int) -> lie.GroupContext:
    try:
        return lie.GroupContext(kind, rank)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def cmd_cell(args) -> int:
    ctx = _context(args.type, args.rank)
    dw = weyl.parse_word(args.word)
    g = cells.gamma_word(ctx, dw)
    size = cells.fg_size(ctx, dw)
    if args.params is None:
        params = [ONE] * size
    else:
        params = [parse_scalar(p) for p in args.params.split()]
    chart = cells.fg_chart(ctx, dw, params)
    out = {
        "type": ctx.kind, "rank": ctx.rank, "word": dw,
        "graph": to_json(g),
        "parameters": [_lit(p) for p in params],
        "fg_faces": cells.fg_faces(ctx, dw, g),
        "chart": matrix_to_json(chart),
    }
    print(_dump(out))
    if args.dot:
        Path(args.dot).write_text(graph_to_dot(g))
    return 0


def cmd_tnn(args) -> int:
    a = matrix_from_json(_read_json(args.matrix))
    ctx = _context(args.type, len(a) // 2) if args.type else lie.GroupContext.for_size(len(a))
    if not positivity.is_tnn(a):
        print("no")
        return 0
    cert = positivity.tnn_membership(ctx, a)
    print("yes")
    print(_dump(cert.to_json()))
    return 0


def cmd_weyl(args) -> int:
    w = weyl.parse_perm(args.perm)
    if len(w) != args.n:
        raise ParseError(f"permutation has {len(w)} entries, expected {args.n}")
    print(f"inv={weyl.inv_count(w)} neg={weyl.neg_count(w)} length={weyl.length(w)}")
    print(f"word={weyl.format_word(weyl.reduced_word(w))}")
    return 0


def cmd_export_dot(args) -> int:
    g, net, _fw = from_json(_read_json(args.graph))
    text = quiver_to_dot(quiver.dual_quiver(g)) if args.quiver else graph_to_dot(g, net)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    numbers = args.only or [c[0] for c in acceptance.CRITERIA]
    ok = True
    for num in numbers:
        r = acceptance.run(num)
        print(r.line(), flush=True)
        ok &= r.ok
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symplabic", description="Plabic graph models of GL_n, Sp_2k and O_2k+1.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("meas", help="boundary measurement matrix of a graph file")
    s.add_argument("graph")
    s.set_defaults(func=cmd_meas)

    s = sub.add_parser("move", help="square move at a face; rewrites the file")
    s.add_argument("graph")
    s.add_argument("--face", required=True)
    s.add_argument("--output", help="write here instead ('-' for stdout)")
    s.set_defaults(func=cmd_move)

    s = sub.add_parser("sigma", help="print sigma of the face weighting")
    s.add_argument("graph")
    s.set_defaults(func=cmd_sigma)

    s = sub.add_parser("check-ms", help="exit 0 iff the (weighted) graph is move-symmetric")
    s.add_argument("graph")
    s.set_defaults(func=cmd_check_ms)

    s = sub.add_parser("quiver", help="bracket coefficients on face coordinates")
    s.add_argument("graph")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--fold", action="store_true", help="folded bracket (even valency)")
    mode.add_argument("--average", action="store_true", help="averaged bracket (odd valency)")
    s.set_defaults(func=cmd_quiver)

    s = sub.add_parser("cell", help="double Bruhat cell graph and its Fock-Goncharov chart")
    s.add_argument("--type", required=True, choices=["B", "C"])
    s.add_argument("--rank", required=True, type=int)
    s.add_argument("--word", required=True, help='double word, e.g. "1 -2 1"')
    s.add_argument("--params", help="chart parameters as scalar literals, space separated")
    s.add_argument("--dot", help="also write the graph as DOT to this path")
    s.set_defaults(func=cmd_cell)

    s = sub.add_parser("tnn", help="total nonnegativity test with a factorization certificate")
    s.add_argument("matrix")
    s.add_argument("--type", choices=["B", "C"])
    s.set_defaults(func=cmd_tnn)

    s = sub.add_parser("weyl", help="statistics of a signed permutation")
    s.add_argument("--n", required=True, type=int)
    s.add_argument("--perm", required=True, help='values w(1)..w(n), e.g. "3 4 1 2"')
    s.set_defaults(func=cmd_weyl)

    s = sub.add_parser("export-dot", help="render a graph or its dual quiver as DOT")
    s.add_argument("graph")
    s.add_argument("--quiver", action="store_true")
    s.add_argument("--output")
    s.set_defaults(func=cmd_export_dot)

    s = sub.add_parser("verify", help="run the acceptance checks")
    s.add_argument("--only", type=int, nargs="+", metavar="N", choices=range(1, 13))
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        sys.stderr.write(json.dumps({"error": exc.kind, "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
