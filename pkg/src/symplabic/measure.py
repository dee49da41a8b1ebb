"""Boundary measurement matrices.

The exact engine sums over flows: the denominator is the sum over
collections of pairwise vertex-disjoint directed cycles, and the numerator
of entry (i, j) sums over self-avoiding paths from source i to sink j
together with cycle collections avoiding the path.  All terms carry sign +1.

``meas_series_oracle`` is an independent numeric check that sums signed
weights of all directed walks up to a length bound, with the winding sign
computed from the turning angles of the embedding.
"""
from __future__ import annotations

import cmath
import math
from typing import Mapping

from . import linalg
from .errors import NoPerfectOrientation, NotPerfect
from .plabic import (
    FaceWeighting,
    Network,
    PlabicGraph,
    _check_orientation,
    edge_weights_from_faces,
    find_perfect_orientation,
    perfect_orientations,
)
from .scalar import ONE, ZERO, Expr, Scalar, eval_float


def _out_arcs(net: Network) -> dict:
    out = {v: [] for v in net.graph.pos}
    for tail, head, w, k in net.arcs():
        out[tail].append((head, w, k))
    return out


def _simple_cycles(net: Network, out: dict) -> list:
    """Simple directed cycles as (vertex frozenset, weight)."""
    order = {v: i for i, v in enumerate(net.graph.pos)}
    cycles = []
    for start in net.graph.pos:
        s = order[start]
        path = [start]
        on_path = {start}

        def dfs(v, weight):
            for head, w, _k in out[v]:
                if head == start:
                    cycles.append((frozenset(path), weight * w))
                elif order[head] > s and head not in on_path:
                    path.append(head)
                    on_path.add(head)
                    dfs(head, weight * w)
                    path.pop()
                    on_path.discard(head)

        dfs(start, ONE)
    return cycles


class _CycleSums:
    """Sums over vertex-disjoint cycle collections avoiding a vertex set."""

    def __init__(self, cycles: list):
        self.cycles = cycles
        self.support = frozenset().union(*[c for c, _ in cycles]) if cycles else frozenset()
        self.memo: dict = {}

    def total(self, forbidden: frozenset = frozenset()):
        key = forbidden & self.support
        if key in self.memo:
            return self.memo[key]
        usable = [(vs, w) for vs, w in self.cycles if not (vs & key)]
        acc = ONE

        def rec(i, used, weight):
            nonlocal acc
            for j in range(i, len(usable)):
                vs, w = usable[j]
                if not (vs & used):
                    term = weight * w
                    acc = acc + term
                    rec(j + 1, used | vs, term)

        rec(0, frozenset(), ONE)
        self.memo[key] = acc
        return acc


def meas(net: Network) -> list:
    """Exact boundary measurement matrix (rows = sources, columns = sinks)."""
    g = net.graph
    if not _check_orientation(g, net.orientation):
        raise NotPerfect("orientation is not perfect")
    out = _out_arcs(net)
    sums = _CycleSums(_simple_cycles(net, out))
    denom = sums.total()
    sink_index = {v: j for j, v in enumerate(g.sinks)}
    numer = [[ZERO] * g.n for _ in range(g.n)]
    for i, src in enumerate(g.sources):
        visited = {src}
        path = [src]

        def dfs(v, weight):
            for head, w, _k in out[v]:
                if head in visited:
                    continue
                if head in sink_index:
                    j = sink_index[head]
                    numer[i][j] = numer[i][j] + weight * w * sums.total(frozenset(path))
                    continue
                visited.add(head)
                path.append(head)
                dfs(head, weight * w)
                path.pop()
                visited.discard(head)

        dfs(src, ONE)
    if isinstance(denom, Scalar) and denom == 1:
        return numer
    return [[x / denom for x in row] for row in numer]


def meas_faces(g: PlabicGraph, fw: FaceWeighting, orientation=None,
               check_product: bool = True) -> list:
    """Measurement matrix of a face-weighted graph (via a gauge section)."""
    if orientation is None:
        orientation = find_perfect_orientation(g)
        if orientation is None:
            raise NoPerfectOrientation("graph has no perfect orientation")
    return meas(edge_weights_from_faces(g, fw, orientation, check_product))


def all_orientation_matrices(g: PlabicGraph, fw: FaceWeighting, limit: int = 64) -> list:
    return [meas_faces(g, fw, o) for o in perfect_orientations(g, limit=limit)]


def _float_weight(w, env: Mapping | None) -> float:
    if isinstance(w, Expr):
        return eval_float(w, env or {})
    return float(w)


def meas_series_oracle(net: Network, maxlen: int, env: Mapping | None = None) -> list:
    """Partial sums of the signed walk series, as floats.

    Every directed walk from a source to a sink with at most ``maxlen`` edges
    contributes ``(-1)**wind * weight``.  The winding number is the total
    turning (from an initial heading along +x, through every corner, back to
    +x at the sink) divided by a full turn.  The sign is accumulated as a
    half-angle phase so the sum is linear in the walks.  The series converges
    only when the cycle weights are small; that is the caller's concern.
    """
    g = net.graph
    arcs = net.arcs()
    pos = g.pos

    def direction(a):
        t, h = a[0], a[1]
        return (float(pos[h][0] - pos[t][0]), float(pos[h][1] - pos[t][1]))

    def turn(d1, d2):
        cross = d1[0] * d2[1] - d1[1] * d2[0]
        dot = d1[0] * d2[0] + d1[1] * d2[1]
        return math.atan2(cross, dot)

    dirs = [direction(a) for a in arcs]
    weights = [_float_weight(a[2], env) for a in arcs]
    by_tail: dict = {}
    for idx, a in enumerate(arcs):
        by_tail.setdefault(a[0], []).append(idx)
    sink_index = {v: j for j, v in enumerate(g.sinks)}
    east = (1.0, 0.0)
    n = g.n
    result = [[0.0] * n for _ in range(n)]
    for i, src in enumerate(g.sources):
        amp = {}
        for idx in by_tail.get(src, []):
            amp[idx] = weights[idx] * cmath.exp(0.5j * turn(east, dirs[idx]))
        for _step in range(maxlen):
            new = {}
            for idx, val in amp.items():
                head = arcs[idx][1]
                if head in sink_index:
                    result[i][sink_index[head]] += (val * cmath.exp(0.5j * turn(dirs[idx], east))).real
                    continue
                for nxt in by_tail.get(head, []):
                    phase = cmath.exp(0.5j * turn(dirs[idx], dirs[nxt]))
                    new[nxt] = new.get(nxt, 0) + val * weights[nxt] * phase
            amp = new
            if not amp:
                break
    return result


def d_matrix(n: int) -> list:
    """diag(1, -1, 1, ...)."""
    return linalg.diag([1 if i % 2 == 0 else -1 for i in range(n)])


def w0_matrix(n: int) -> list:
    return [[ONE if i + j == n - 1 else ZERO for j in range(n)] for i in range(n)]


def grassmann_meas(net: Network) -> list:
    """The n x 2n matrix (D w0 A, I)."""
    a = meas(net)
    n = len(a)
    left = linalg.matmul(linalg.matmul(d_matrix(n), w0_matrix(n)), a)
    ident = linalg.identity(n)
    return [left[i] + ident[i] for i in range(n)]
