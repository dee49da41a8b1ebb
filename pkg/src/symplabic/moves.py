"""Square moves, move-symmetry and the involution sigma on face weightings."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import (
    MovePole,
    NotASquareFace,
    NotMoveSymmetricGraph,
    NotMoveSymmetricWeighting,
)
from .plabic import (
    BLACK,
    WHITE,
    FaceWeighting,
    PlabicGraph,
    complete_weighting,
    isomorphism,
    opposite,
    random_positive,
    reflect,
)
from .scalar import ONE, Scalar, var


@dataclass(frozen=True)
class SquareFace:
    face: str
    vertices: tuple  # tails of the darts in counter-clockwise order
    darts: tuple


def square_face(g: PlabicGraph, fid: str) -> SquareFace:
    """Validate that fid is a square face and return its description."""
    f = g.face(fid)
    if any(g.is_frame_dart(d) for d in f.darts) or len(f.darts) != 4:
        raise NotASquareFace(f"face {fid} is not a four-edge internal face")
    verts = tuple(g.tail(d) for d in f.darts)
    if len(set(verts)) != 4:
        raise NotASquareFace(f"face {fid} has repeated vertices")
    for v in verts:
        if g.is_boundary(v) or g.degree(v) != 3:
            raise NotASquareFace(f"vertex {v} of face {fid} is not trivalent internal")
    for a, b in zip(verts, verts[1:] + verts[:1]):
        if g.color[a] == g.color[b]:
            raise NotASquareFace(f"colors around face {fid} do not alternate")
    return SquareFace(fid, verts, f.darts)


def is_square(g: PlabicGraph, fid: str) -> bool:
    try:
        square_face(g, fid)
    except NotASquareFace:
        return False
    return True


def _is_pole(x) -> bool:
    return isinstance(x, Scalar) and not x


def move_factors(g: PlabicGraph, sq: SquareFace, y0) -> dict:
    """Multiplicative factor picked up by each neighbouring face."""
    if _is_pole(1 + y0) or _is_pole(y0):
        raise MovePole("square move is undefined at this weight")
    factors: dict = {}
    grow = 1 + y0
    shrink = 1 / (1 + 1 / y0)
    for d in sq.darts:
        u, v = g.tail(d), g.head(d)
        nb = g.face_of_dart(d ^ 1)
        if nb is None:
            continue
        step = shrink if (g.color[u] == WHITE and g.color[v] == BLACK) else grow
        factors[nb] = factors[nb] * step if nb in factors else step
    return factors


def square_move(g: PlabicGraph, fid: str, fw: FaceWeighting):
    """Square move at face fid: flips the four colors and mutates the weights."""
    sq = square_face(g, fid)
    fw = complete_weighting(g, fw)
    y0 = fw[fid]
    factors = move_factors(g, sq, y0)
    values = dict(fw.values)
    for nb, fac in factors.items():
        values[nb] = values[nb] * fac
    values[fid] = 1 / y0
    g2 = g.with_colors({v: opposite(g.color[v]) for v in sq.vertices})
    return g2, FaceWeighting(values, "full")


def midline_squares(g: PlabicGraph) -> list:
    """Square faces with two opposite vertices on the midline."""
    mid = g.rect.midline
    out = []
    for f in g.faces():
        if not is_square(g, f.id):
            continue
        sq = square_face(g, f.id)
        ys = [g.pos[v][1] for v in sq.vertices]
        if (ys[0] == mid and ys[2] == mid) or (ys[1] == mid and ys[3] == mid):
            out.append(sq)
    return out


def _disjoint_squares(g: PlabicGraph) -> list:
    squares = midline_squares(g)
    used: set = set()
    for sq in squares:
        if used & set(sq.vertices):
            raise NotMoveSymmetricGraph("midline squares share a vertex")
        used |= set(sq.vertices)
    return squares


def _moved_graph(g: PlabicGraph, squares) -> PlabicGraph:
    flips = {}
    for sq in squares:
        for v in sq.vertices:
            flips[v] = opposite(g.color[v])
    return g.with_colors(flips)


@dataclass
class Symmetry:
    """Combinatorics of sigma: the face permutation and the midline squares."""

    squares: list
    image: dict  # face of g -> face of g carrying its moved weight
    moved: PlabicGraph = field(repr=False)


def symmetry(g: PlabicGraph) -> Symmetry:
    """Compute the face permutation of sigma; raises if g is not move-symmetric."""
    if "symmetry" in g._cache:
        return g._cache["symmetry"]
    squares = _disjoint_squares(g)
    moved = _moved_graph(g, squares)
    mirrored = reflect(moved)
    iso = isomorphism(mirrored, g, flip_colors=True)
    if iso is None:
        raise NotMoveSymmetricGraph("graph is not move-symmetric")
    image = {}
    for f in moved.faces():
        e, fwd = f.word[0]
        d = 2 * e + (0 if fwd else 1)
        reflected = mirrored.face_of_dart(d ^ 1)
        image[f.id] = iso.face_map[reflected]
    result = Symmetry(squares, image, moved)
    g._cache["symmetry"] = result
    return result


def sigma(g: PlabicGraph, fw: FaceWeighting) -> FaceWeighting:
    """Square moves at all midline squares, then reflection with recoloring."""
    sym = symmetry(g)
    fw = complete_weighting(g, fw)
    values = dict(fw.values)
    current = g
    for sq in sym.squares:
        current, moved = square_move(current, sq.face, FaceWeighting(values, "full"))
        values = dict(moved.values)
    out = {sym.image[f]: v for f, v in values.items()}
    return FaceWeighting({f: out[f] for f in g.face_ids()}, "full")


def is_move_symmetric(g: PlabicGraph, fw: FaceWeighting | None = None) -> bool:
    try:
        symmetry(g)
    except NotMoveSymmetricGraph:
        return False
    if fw is None:
        return True
    try:
        return sigma(g, fw) == complete_weighting(g, fw)
    except MovePole:
        return False


# move-symmetric coordinates ------------------------------------------------

@dataclass
class MSChart:
    """Coordinates on the move-symmetric weightings of a graph.

    Even valency: one coordinate per face on or above the midline, relation
    prod(midline) * prod(above)^2 = 1.  Odd valency: one coordinate
    sqrt(y_i y_i') = sqrt(c_i) y_i per face above the midline, midline
    squares carry weight 1, relation prod = +-1.
    """

    graph: PlabicGraph
    parity: str
    names: list
    face_of: dict  # coordinate name -> face above (or on) the midline
    mirror: dict  # face above -> mirror face below
    constants: dict  # face above -> c with y(mirror) = c * y(face)
    roots: dict  # face above -> sqrt(c)
    squares: list
    exponents: dict  # coordinate name -> exponent in the relation

    def weighting(self, coords: dict) -> FaceWeighting:
        """Full face weighting from coordinate values (Scalars or Exprs)."""
        values = {}
        for sq in self.squares:
            values[sq] = ONE
        for name in self.names:
            f = self.face_of[name]
            s = coords[name]
            if f in self.mirror:
                if self.parity == "odd":
                    root = self.roots[f]
                    values[f] = s / root
                    values[self.mirror[f]] = s * root
                else:
                    values[f] = s
                    values[self.mirror[f]] = s
            else:
                values[f] = s
        return FaceWeighting({f: values[f] for f in self.graph.face_ids()}, "full")

    def coordinates(self, fw: FaceWeighting) -> dict:
        """Coordinates of a move-symmetric weighting."""
        fw = complete_weighting(self.graph, fw)
        out = {}
        for name in self.names:
            f = self.face_of[name]
            out[name] = fw[f] * self.roots[f] if self.parity == "odd" else fw[f]
        return out

    def variables(self) -> dict:
        return {name: var(name) for name in self.names}

    def relation_value(self, coords: dict):
        acc = ONE
        for name, e in self.exponents.items():
            acc = acc * coords[name] ** e
        return acc

    def random_point(self, rng: random.Random, bound: int = 9, sign: int | None = None) -> dict:
        """Random coordinates on the relation hypersurface.

        In the odd case the relation value is ``sign`` (drawn at random when None);
        with sign +1 all coordinates are positive.
        """
        solve = next((n for n in self.names if self.exponents[n] == 1), None)
        if solve is None:
            raise NotMoveSymmetricWeighting("no coordinate enters the relation linearly")
        coords = {n: random_positive(rng, bound) for n in self.names}
        coords[solve] = ONE
        rest = self.relation_value(coords)
        if self.parity == "odd" and sign is None:
            sign = -1 if rng.random() < 0.5 else 1
        target = -ONE if sign == -1 and self.parity == "odd" else ONE
        coords[solve] = target / rest
        return coords

    def random_weighting(self, rng: random.Random, bound: int = 9, sign: int | None = None) -> FaceWeighting:
        return self.weighting(self.random_point(rng, bound, sign))


def _name(fid: str) -> str:
    return f"y[{fid}]"


def ms_coordinates(g: PlabicGraph) -> MSChart:
    if "ms_chart" in g._cache:
        return g._cache["ms_chart"]
    sym = symmetry(g)
    faces = {f.id: f for f in g.faces()}
    square_ids = {sq.face for sq in sym.squares}
    ones = FaceWeighting({f: ONE for f in faces}, "full")
    moved = sigma(g, ones)
    parity = "odd" if g.n % 2 else "even"
    if parity == "even" and square_ids:
        raise NotMoveSymmetricGraph("even-valency graphs with midline squares are not supported")
    names, face_of, mirror, constants, roots, exponents = [], {}, {}, {}, {}, {}
    for fid, f in faces.items():
        if f.region == "0":
            if fid in square_ids:
                continue
            if parity == "odd":
                raise NotMoveSymmetricGraph("midline face that is not a square in odd valency")
            if sym.image[fid] != fid:
                raise NotMoveSymmetricGraph("midline face is not mapped to itself")
            n = _name(fid)
            names.append(n)
            face_of[n] = fid
            exponents[n] = 1
        elif f.region == "+":
            low = sym.image[fid]
            if faces[low].region != "-" or sym.image[low] != fid:
                raise NotMoveSymmetricGraph("faces above and below the midline do not pair up")
            c = moved[low]
            back = moved[fid]
            if c * back != 1:
                raise NotMoveSymmetricGraph("inconsistent mirror constants")
            n = _name(fid)
            names.append(n)
            face_of[n] = fid
            mirror[fid] = low
            constants[fid] = c
            if parity == "odd":
                roots[fid] = c.sqrt()
                exponents[n] = 1
            else:
                if c != 1:
                    raise NotMoveSymmetricGraph("mirror constant differs from 1 in even valency")
                roots[fid] = ONE
                exponents[n] = 2
    chart = MSChart(g, parity, names, face_of, mirror, constants, roots,
                    sorted(square_ids), exponents)
    g._cache["ms_chart"] = chart
    return chart


def relation_sign(chart: MSChart, fw: FaceWeighting) -> int:
    """Sign of the relation monomial at a move-symmetric weighting (odd valency)."""
    value = chart.relation_value(chart.coordinates(fw))
    if value == 1:
        return 1
    if value == -1:
        return -1
    raise NotMoveSymmetricWeighting("relation monomial is not +-1")
