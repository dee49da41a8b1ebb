"""Plabic graphs for double Bruhat cells in types B and C.

Each letter of a double word gets a unit-width column with n wires at heights
1..n (bottom to top).  ``psi`` puts the factorization weights on a column,
``phi`` is the matrix product they should reproduce, and the Fock-Goncharov
chart interleaves cocharacters with the generators X_i(1).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from . import linalg, lie, weyl
from .errors import (
    LengthMismatch,
    NoPerfectOrientation,
    NotMoveSymmetricWeighting,
    NotReduced,
    ZeroParameter,
)
from .lie import GroupContext
from .measure import meas, meas_faces
from .moves import is_move_symmetric, ms_coordinates
from .plabic import (
    BLACK,
    WHITE,
    FaceWeighting,
    Network,
    PlabicGraph,
    Rect,
    complete_weighting,
    concat_graphs,
    concat_networks,
    find_perfect_orientation,
    identity_graph,
)
from .scalar import ONE, SQRT2, Expr, Scalar, eval_many, var

HALF = Fraction(1, 2)


def _require_bc(ctx: GroupContext) -> None:
    if ctx.kind not in ("B", "C"):
        raise ValueError("double Bruhat cell graphs are built for types B and C")


def _scalar(t):
    if isinstance(t, (Scalar, Expr)):
        return t
    return Scalar.coerce(t)


def _nonzero(t) -> None:
    if isinstance(t, Scalar) and not t:
        raise ZeroParameter("parameter must be nonzero")


def _column(n: int, verts: dict, edges: list, wired: set) -> PlabicGraph:
    """A unit column: wires not in ``wired`` run straight across."""
    table = {}
    for j in range(1, n + 1):
        table[f"s{j}"] = (0, j, None)
        table[f"t{j}"] = (1, j, None)
    table.update(verts)
    all_edges = list(edges)
    for j in range(1, n + 1):
        if j not in wired:
            all_edges.append((f"s{j}", f"t{j}"))
    return PlabicGraph(
        Rect(Fraction(0), Fraction(1), Fraction(0), Fraction(n + 1)), table,
        [f"s{j}" for j in range(1, n + 1)], [f"t{j}" for j in range(1, n + 1)], all_edges,
    )


def _bridge(low: int, positive: bool, tag: str):
    """Vertical bridge between rows low and low+1; black on top for a positive letter."""
    top, bottom = (BLACK, WHITE) if positive else (WHITE, BLACK)
    u, d = f"u{tag}", f"d{tag}"
    verts = {u: (HALF, low + 1, top), d: (HALF, low, bottom)}
    edges = [
        (f"s{low + 1}", u), (u, f"t{low + 1}"),
        (f"s{low}", d), (d, f"t{low}"),
        (d, u),
    ]
    return verts, edges, {low, low + 1}


def _gadget(k: int, positive: bool):
    """Square gadget on rows k, k+1, k+2 for the short root of type B."""
    q = Fraction(1, 4)
    mid = k + 1
    verts = {
        "A": (q, mid, WHITE), "B": (HALF, mid + q, BLACK),
        "C": (1 - q, mid, WHITE), "D": (HALF, mid - q, BLACK),
        "E": (HALF, k + 2, BLACK if positive else WHITE),
        "F": (HALF, k, WHITE if positive else BLACK),
    }
    edges = [
        (f"s{mid}", "A"), ("A", "B"), ("B", "C"), ("C", "D"), ("D", "A"), ("C", f"t{mid}"),
        ("B", "E"), (f"s{k + 2}", "E"), ("E", f"t{k + 2}"),
        ("D", "F"), (f"s{k}", "F"), ("F", f"t{k}"),
    ]
    return verts, edges, {k, k + 1, k + 2}


def gamma_graph(ctx: GroupContext, letter: int) -> PlabicGraph:
    """Elementary move-symmetric graph of a letter in [-k, -1] U [1, k]."""
    _require_bc(ctx)
    ctx.check_letter(letter)
    n, k = ctx.n, ctx.rank
    i, positive = abs(letter), letter > 0
    if i < k:
        v1, e1, w1 = _bridge(i, positive, "1")
        v2, e2, w2 = _bridge(n - i, positive, "2")
        return _column(n, {**v1, **v2}, e1 + e2, w1 | w2)
    if ctx.kind == "C":
        v, e, w = _bridge(k, positive, "1")
        return _column(n, v, e, w)
    v, e, w = _gadget(k, positive)
    return _column(n, v, e, w)


def _check_word(ctx: GroupContext, dw: Sequence) -> None:
    for a in dw:
        ctx.check_letter(a)
    if not weyl.is_reduced_double(ctx.n, dw):
        raise NotReduced(f"double word {list(dw)} is not reduced")


def gamma_word(ctx: GroupContext, dw: Sequence) -> PlabicGraph:
    _require_bc(ctx)
    _check_word(ctx, dw)
    return _gamma_word(ctx.kind, ctx.rank, tuple(dw))


@lru_cache(maxsize=512)
def _gamma_word(kind: str, rank: int, dw: tuple) -> PlabicGraph:
    # graphs are immutable, so sharing one instance also shares its cached chart
    ctx = GroupContext(kind, rank)
    if not dw:
        return identity_graph(ctx.n)
    g = gamma_graph(ctx, dw[0])
    for a in dw[1:]:
        g = concat_graphs(g, gamma_graph(ctx, a))[0]
    return g


def _orientation(g: PlabicGraph):
    o = find_perfect_orientation(g)
    if o is None:
        raise NoPerfectOrientation("elementary graph has no perfect orientation")
    return o


def psi(ctx: GroupContext, letter: int, t) -> Network:
    """Network on gamma_graph(letter) whose measurement is X_letter(t)."""
    t = _scalar(t)
    _nonzero(t)
    g = gamma_graph(ctx, letter)
    weights = []
    short = ctx.kind == "B" and abs(letter) == ctx.rank
    upper, lower = (t / SQRT2, t * SQRT2) if letter > 0 else (t * SQRT2, t / SQRT2)
    for u, v in g.edges:
        pair = {u, v}
        if short and pair == {"B", "E"}:
            weights.append(upper)
        elif short and pair == {"D", "F"}:
            weights.append(lower)
        elif not short and g.color.get(u) and g.color.get(v):
            weights.append(t)
        else:
            weights.append(ONE)
    return Network(g, _orientation(g), weights)


def psi0(ctx: GroupContext, h: list) -> Network:
    """Straight wires carrying the diagonal of a torus element, bottom to top."""
    lie.check_torus(ctx, h)
    g = identity_graph(ctx.n)
    return Network(g, [True] * ctx.n, [h[j][j] for j in range(ctx.n)])


def psi_word(ctx: GroupContext, dw: Sequence, h: list, ts: Sequence) -> Network:
    """psi0(H) followed by psi(i_1, t_1), ..., psi(i_m, t_m)."""
    if len(dw) != len(ts):
        raise LengthMismatch("one parameter per letter is required")
    _check_word(ctx, dw)
    lie.check_torus(ctx, h)
    ts = [_scalar(t) for t in ts]
    for t in ts:
        _nonzero(t)
    template = _psi_template(ctx.kind, ctx.rank, tuple(dw))
    env = {f"h{j}": h[j][j] for j in range(ctx.n)}
    env.update({f"t{j}": t for j, t in enumerate(ts)})
    return template.with_weights(eval_many(template.weights, env))


@lru_cache(maxsize=512)
def _psi_template(kind: str, rank: int, dw: tuple) -> Network:
    """The concatenated network with symbolic weights h_j and t_j."""
    ctx = GroupContext(kind, rank)
    n = ctx.n
    net = Network(identity_graph(n), [True] * n, [var(f"h{j}") for j in range(n)])
    for j, a in enumerate(dw):
        net = concat_networks(net, psi(ctx, a, var(f"t{j}")))
    return net


def phi(ctx: GroupContext, dw: Sequence, h: list, ts: Sequence) -> list:
    """H X_{i1}(t1) ... X_{im}(tm)."""
    if len(dw) != len(ts):
        raise LengthMismatch("one parameter per letter is required")
    out = h
    for a, t in zip(dw, ts):
        t = _scalar(t)
        _nonzero(t)
        out = linalg.matmul(out, lie.x_elem(ctx, a, t))
    return out


def parameter_count(ctx: GroupContext, dw: Sequence) -> int:
    """Number of free move-symmetric face coordinates of the graph."""
    chart = ms_coordinates(gamma_word(ctx, dw))
    return len(chart.names) - 1


# Fock-Goncharov charts --------------------------------------------------

@dataclass(frozen=True)
class FGBlock:
    kind: str  # 'Y' or 'X'
    index: int  # simple root index for Y, signed letter for X
    position: int  # number of letters to the left
    param: int = -1  # parameter slot for Y blocks


def fg_layout(ctx: GroupContext, dw: Sequence) -> list:
    """Y_1..Y_k first, then a Y_|i| right after every letter +-i."""
    blocks = []
    slot = 0
    for i in range(1, ctx.rank + 1):
        blocks.append(FGBlock("Y", i, 0, slot))
        slot += 1
    for p, a in enumerate(dw, 1):
        blocks.append(FGBlock("X", a, p - 1))
        blocks.append(FGBlock("Y", abs(a), p, slot))
        slot += 1
    return blocks


def fg_size(ctx: GroupContext, dw: Sequence) -> int:
    return ctx.rank + len(dw)


def fg_cochar(ctx: GroupContext, i: int, t) -> list:
    """Y_i(t); for the half-integral coweight the representative diag(t..t, 1..1)."""
    if lie.is_half_integral(ctx, i):
        n = ctx.n
        return [[(t if a < ctx.rank else ONE) if a == b else Scalar(0) for b in range(n)] for a in range(n)]
    return lie.y_cochar(ctx, i, t)


def fg_chart(ctx: GroupContext, dw: Sequence, params: Sequence) -> list:
    """Interleaved product of cocharacters and X_{+-i}(1)."""
    _require_bc(ctx)
    if len(params) != fg_size(ctx, dw):
        raise LengthMismatch(f"expected {fg_size(ctx, dw)} parameters")
    params = [_scalar(p) for p in params]
    for p in params:
        _nonzero(p)
    out = linalg.identity(ctx.n)
    for b in fg_layout(ctx, dw):
        if b.kind == "Y":
            out = linalg.matmul(out, fg_cochar(ctx, b.index, params[b.param]))
        else:
            out = linalg.matmul(out, lie.x_elem(ctx, b.index, ONE))
    return out


def _strip_height(ctx: GroupContext, i: int) -> Fraction:
    """Height between the two upper rows carrying the i-th simple root."""
    n, k = ctx.n, ctx.rank
    if ctx.kind == "C" and i == k:
        return Fraction(2 * k + 1, 2)
    low = n - i
    return Fraction(2 * low + 1, 2)


def fg_faces(ctx: GroupContext, dw: Sequence, g: PlabicGraph | None = None) -> list:
    """Face carrying each Fock-Goncharov parameter, in parameter order."""
    if g is None:
        g = gamma_word(ctx, dw)
    faces = [None] * fg_size(ctx, dw)
    eps = Fraction(1, 10)
    for b in fg_layout(ctx, dw):
        if b.kind != "Y":
            continue
        x = eps if b.position == 0 else b.position - eps
        faces[b.param] = g.face_at(x, _strip_height(ctx, b.index))
    return faces


def fg_from_faces(ctx: GroupContext, dw: Sequence, fw: FaceWeighting, check: bool = True) -> list:
    """Fock-Goncharov parameters of a move-symmetric weighting of the cell graph.

    Type C: face weights on or above the midline.  Type B: geometric means of
    mirror pairs above the midline.
    """
    g = gamma_word(ctx, dw)
    fw = complete_weighting(g, fw)
    if check and not is_move_symmetric(g, fw):
        raise NotMoveSymmetricWeighting("weighting is not move-symmetric")
    chart = ms_coordinates(g)
    out = []
    for f in fg_faces(ctx, dw, g):
        if ctx.kind == "B":
            out.append(fw[f] * chart.roots[f])
        else:
            out.append(fw[f])
    return out


def fg_roundtrip(ctx: GroupContext, dw: Sequence, fw: FaceWeighting):
    """(scalar c, ok): fg_chart(fg_from_faces(fw)) == c * meas_faces(fw)."""
    g = gamma_word(ctx, dw)
    chart_matrix = fg_chart(ctx, dw, fg_from_faces(ctx, dw, fw))
    a = meas_faces(g, complete_weighting(g, fw))
    c = linalg.proportional(chart_matrix, a)
    return c, c is not None


def random_torus(ctx: GroupContext, rng, bound: int = 9, middle=1) -> list:
    xs = [Scalar(Fraction(rng.randint(1, bound), rng.randint(1, bound))) for _ in range(ctx.rank)]
    return lie.torus(ctx, xs, middle)


def meas_of_factorization(ctx: GroupContext, dw: Sequence, h: list, ts: Sequence) -> list:
    return meas(psi_word(ctx, dw, h, ts))
