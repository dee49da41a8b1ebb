"""Dual quivers, log-canonical brackets and their folded/averaged versions.

Quiver entries are kept as exact Fractions (half-edges count 1/2), and the
bracket coefficient matrices likewise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import lie
from .errors import EvenValency, OddValency
from .measure import meas_faces
from .moves import MSChart, ms_coordinates, symmetry
from .plabic import BLACK, WHITE, FaceWeighting, PlabicGraph
from .scalar import ZERO, grad_many, var

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class QuiverEdge:
    source: str
    target: str
    half: bool
    edge: int  # index of the plabic edge it crosses


@dataclass
class Quiver:
    vertices: list
    edges: list = field(default_factory=list)
    q: dict = field(default_factory=dict)  # (i, j) -> Fraction, skew

    def __getitem__(self, key) -> Fraction:
        return self.q.get(key, Fraction(0))

    def matrix(self) -> list:
        return [[self[i, j] for j in self.vertices] for i in self.vertices]

    def is_skew(self) -> bool:
        return all(self[i, j] == -self[j, i] for i in self.vertices for j in self.vertices)

    def relabel(self, mapping: Mapping) -> "Quiver":
        q = {(mapping[i], mapping[j]): v for (i, j), v in self.q.items()}
        edges = [QuiverEdge(mapping[e.source], mapping[e.target], e.half, e.edge) for e in self.edges]
        return Quiver([mapping[v] for v in self.vertices], edges, q)

    def __eq__(self, other):
        if not isinstance(other, Quiver) or set(self.vertices) != set(other.vertices):
            return False
        return all(self[i, j] == other[i, j] for i in self.vertices for j in self.vertices)


def _add(q: dict, i: str, j: str, w: Fraction) -> None:
    if i == j:
        return
    q[i, j] = q.get((i, j), Fraction(0)) + w
    q[j, i] = q.get((j, i), Fraction(0)) - w
    for key in ((i, j), (j, i)):
        if q[key] == 0:
            del q[key]


def dual_quiver(g: PlabicGraph) -> Quiver:
    """Quiver on faces; each arrow crosses an edge keeping its white end on the left."""
    edges = []
    q: dict = {}
    for k, (u, v) in enumerate(g.edges):
        cu, cv = g.color.get(u), g.color.get(v)
        if cu is None and cv is None:
            continue
        if cu is not None and cv is not None and cu == cv:
            continue
        half = cu is None or cv is None
        # the endpoint that must lie on the left of the arrow
        if cu == WHITE or cv == BLACK:
            left = u
        else:
            left = v
        fwd_face = g.face_of_dart(2 * k)      # left of u -> v
        back_face = g.face_of_dart(2 * k + 1)  # right of u -> v
        if left == u:
            src, dst = back_face, fwd_face
        else:
            src, dst = fwd_face, back_face
        edges.append(QuiverEdge(src, dst, half, k))
        _add(q, src, dst, HALF if half else Fraction(1))
    return Quiver(list(g.face_ids()), edges, q)


def y_mutate(quiver: Quiver, k: str) -> Quiver:
    """Matrix mutation of the exchange matrix at vertex k."""
    q = {}
    verts = quiver.vertices
    for i in verts:
        for j in verts:
            if i == j:
                continue
            if i == k or j == k:
                val = -quiver[i, j]
            else:
                a, b = quiver[i, k], quiver[k, j]
                val = quiver[i, j] + (abs(a) * b + a * abs(b)) / 2
            if val:
                q[i, j] = val
    return Quiver(list(verts), [], q)


# brackets -------------------------------------------------------------------

@dataclass
class BracketSpec:
    """Log-canonical bracket {x_a, x_b} = coeff[a, b] x_a x_b on named coordinates.

    ``relation`` maps coordinate names to exponents of the monomial that is
    constrained to a constant on the space.
    """

    names: list
    coeff: dict  # (a, b) -> Fraction
    relation: dict
    chart: MSChart | None = None
    face_of: dict = field(default_factory=dict)  # coordinate -> face id

    def __getitem__(self, key) -> Fraction:
        return self.coeff.get(key, Fraction(0))

    def matrix(self) -> list:
        return [[self[a, b] for b in self.names] for a in self.names]

    def is_skew(self) -> bool:
        return all(self[a, b] == -self[b, a] for a in self.names for b in self.names)

    def relation_is_central(self) -> bool:
        return all(
            sum((e * self[a, b] for a, e in self.relation.items()), Fraction(0)) == 0
            for b in self.names
        )

    def scaled(self, factor) -> "BracketSpec":
        c = {key: v * factor for key, v in self.coeff.items()}
        return BracketSpec(list(self.names), c, dict(self.relation), self.chart, dict(self.face_of))

    def weighting(self, coords: Mapping) -> FaceWeighting:
        """Face weighting of the graph at the given coordinate values."""
        if self.chart is not None:
            return self.chart.weighting(coords)
        return FaceWeighting({self.face_of[n]: coords[n] for n in self.names}, "full")

    def bracket(self, values: Mapping, grad1: Sequence, grad2: Sequence):
        """sum_ab d1_a {x_a, x_b} d2_b at the point ``values``."""
        acc = ZERO
        for a, da in zip(self.names, grad1):
            if not da:
                continue
            for b, db in zip(self.names, grad2):
                c = self[a, b]
                if not c or not db:
                    continue
                acc = acc + da * db * values[a] * values[b] * c
        return acc


def log_canonical_bracket(quiver: Quiver) -> BracketSpec:
    names = list(quiver.vertices)
    coeff = {(a, b): quiver[a, b] for a in names for b in names if quiver[a, b]}
    return BracketSpec(names, coeff, {n: 1 for n in names}, None, {n: n for n in names})


def face_bracket(g: PlabicGraph) -> BracketSpec:
    return log_canonical_bracket(dual_quiver(g))


def folded_bracket(g: PlabicGraph, scale=1) -> BracketSpec:
    """Bracket on move-symmetric weightings of an even-valency graph."""
    if g.n % 2:
        raise OddValency("folding applies to even valency")
    chart = ms_coordinates(g)
    quiver = dual_quiver(g)
    faces = {f.id: f for f in g.faces()}
    names = chart.names
    coeff = {}
    for a in names:
        for b in names:
            fa, fb = chart.face_of[a], chart.face_of[b]
            c = quiver[fa, fb]
            if not c:
                continue
            if faces[fa].region == "+" and faces[fb].region == "+":
                c = c / 2
            coeff[a, b] = c * scale
    return BracketSpec(list(names), coeff, dict(chart.exponents), chart, dict(chart.face_of))


def averaged_bracket(g: PlabicGraph, scale=1) -> BracketSpec:
    """Bracket on geometric-mean coordinates of an odd-valency move-symmetric graph."""
    if g.n % 2 == 0:
        raise EvenValency("averaging applies to odd valency")
    chart = ms_coordinates(g)
    quiver = dual_quiver(g)
    names = chart.names
    coeff = {}
    for a in names:
        for b in names:
            fa, fb = chart.face_of[a], chart.face_of[b]
            ma, mb = chart.mirror[fa], chart.mirror[fb]
            c = (quiver[fa, fb] + quiver[ma, mb]) / 4
            if c:
                coeff[a, b] = c * scale
    return BracketSpec(list(names), coeff, dict(chart.exponents), chart, dict(chart.face_of))


def move_symmetric_bracket(g: PlabicGraph) -> BracketSpec:
    return averaged_bracket(g) if g.n % 2 else folded_bracket(g)


def midline_antisymmetry(g: PlabicGraph) -> bool:
    """q_{i'k} = -q_{ik} for faces i above the midline and k on it."""
    quiver = dual_quiver(g)
    sym = symmetry(g)
    faces = {f.id: f for f in g.faces()}
    mids = [f for f, x in faces.items() if x.region == "0"]
    for i, f in faces.items():
        if f.region != "+":
            continue
        mirror = sym.image[i]
        for k in mids:
            if quiver[mirror, k] != -quiver[i, k]:
                return False
    return True


# pushforward --------------------------------------------------------------

class Pushforward:
    """Measurement entries as expressions in a bracket's coordinates."""

    def __init__(self, g: PlabicGraph, spec: BracketSpec, ctx: lie.GroupContext | None = None):
        self.graph = g
        self.spec = spec
        if ctx is None:
            ctx = lie.GroupContext.for_size(g.n, "A" if spec.chart is None else None)
        self.ctx = ctx
        symbolic = spec.weighting({n: var(n) for n in spec.names})
        self.matrix = meas_faces(g, symbolic, check_product=False)
        self.entries = [(i, j) for i in range(g.n) for j in range(g.n)]

    def evaluate(self, coords: Mapping):
        """(A, gradients) at a point; gradients keyed by entry."""
        env = {n: coords[n] for n in self.spec.names}
        flat = [self.matrix[i][j] for i, j in self.entries]
        values, grads = grad_many(flat, self.spec.names, env)
        n = self.graph.n
        a = [[values[i * n + j] for j in range(n)] for i in range(n)]
        return a, dict(zip(self.entries, grads))

    def compare(self, coords: Mapping, pairs: Sequence | None = None) -> list:
        """[(pair, lhs, rhs)] with lhs the pushed-forward bracket and rhs the standard one."""
        a, grads = self.evaluate(coords)
        env = {n: coords[n] for n in self.spec.names}
        table = lie.std_bracket_table(self.ctx, a)
        if pairs is None:
            pairs = [(p, r) for p in self.entries for r in self.entries]
        out = []
        for p, r in pairs:
            lhs = self.spec.bracket(env, grads[p], grads[r])
            out.append(((p, r), lhs, table[p, r]))
        return out


def pushforward_check(g: PlabicGraph, fw: FaceWeighting, spec: BracketSpec, first: tuple, second: tuple):
    """(lhs, rhs) for the entries first = (i, j), second = (k, l), 0-based."""
    push = Pushforward(g, spec)
    if spec.chart is not None:
        coords = spec.chart.coordinates(fw)
    else:
        coords = {n: fw[spec.face_of[n]] for n in spec.names}
    (_pair, lhs, rhs), = push.compare(coords, [(first, second)])
    return lhs, rhs
