"""Plabic graphs embedded in a rectangle, perfect networks and face weights.

A graph has ``n`` sources on the left side and ``n`` sinks on the right side,
listed bottom-up, plus colored internal vertices.  Edges are straight
segments; edge ``k`` is ``edges[k]``.  The rectangle frame is added
internally as extra edges so that faces can be traced from the rotation
system.

Darts: dart ``2k`` runs along edge ``k`` in its stored direction ``u -> v``
and dart ``2k + 1`` runs backwards.  Faces are traced counter-clockwise, so
each face lies to the left of its darts.
"""
from __future__ import annotations

import functools
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    InvalidGraph,
    NonPlanarEmbedding,
    NoPerfectOrientation,
    NotPerfect,
    NotPerfectlyOrientable,
    ProductNotOne,
    ValencyMismatch,
    ZeroLambda,
)
from .scalar import ONE, Expr, Scalar, format_scalar, parse_scalar, probably_equal

BLACK = "black"
WHITE = "white"
_CORNERS = ("#bl", "#br", "#tr", "#tl")


def opposite(color: str) -> str:
    return WHITE if color == BLACK else BLACK


def _rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Scalar):
        if x.b:
            raise InvalidGraph("coordinates must be rational")
        return x.a
    if isinstance(x, str):
        return _rational(parse_scalar(x))
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    raise InvalidGraph(f"bad coordinate {x!r}")


@dataclass(frozen=True)
class Rect:
    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    @property
    def midline(self) -> Fraction:
        return (self.y0 + self.y1) / 2


@dataclass(frozen=True)
class Face:
    id: str
    darts: tuple
    word: tuple
    is_top: bool
    is_bottom: bool
    region: str
    polygon: tuple = field(repr=False)

    @property
    def touches_midline(self) -> bool:
        return self.region == "0"

    def boundary(self, orientation: Sequence[bool] | None = None) -> list:
        """(edge, eps) pairs; eps = +1 iff the edge direction agrees with the traversal."""
        out = []
        for e, forward in self.word:
            agrees = forward if orientation is None else forward == orientation[e]
            out.append((e, 1 if agrees else -1))
        return out


def _angle_key(dx: Fraction, dy: Fraction):
    half = 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1
    return half


def _cmp_dirs(a, b) -> int:
    ha, hb = _angle_key(*a), _angle_key(*b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


def _orient(p, q, r) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _on_segment(p, q, r) -> bool:
    """r collinear with p, q and inside their bounding box."""
    return (
        min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
        and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])
    )


def _segments_cross(p1, p2, q1, q2) -> bool:
    """Closed segments meet (used for segments with no shared endpoint)."""
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if d1 != d2 and d3 != d4 and 0 not in (d1, d2, d3, d4):
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


class PlabicGraph:
    """An embedded plabic graph.  Immutable; derived data is cached."""

    def __init__(
        self,
        rect: Rect | Sequence,
        vertices: Mapping[str, tuple],
        sources: Sequence[str],
        sinks: Sequence[str],
        edges: Sequence[tuple],
        *,
        _embedding_checked: bool = False,
    ):
        if not isinstance(rect, Rect):
            rect = Rect(*[_rational(v) for v in rect])
        else:
            rect = Rect(*[_rational(v) for v in (rect.x0, rect.x1, rect.y0, rect.y1)])
        self.rect = rect
        self.pos: dict = {}
        self.color: dict = {}
        for vid, data in vertices.items():
            x, y = data[0], data[1]
            c = data[2] if len(data) > 2 else None
            self.pos[str(vid)] = (_rational(x), _rational(y))
            if c is not None:
                if c not in (BLACK, WHITE):
                    raise InvalidGraph(f"bad color {c!r}")
                self.color[str(vid)] = c
        self.sources = tuple(str(s) for s in sources)
        self.sinks = tuple(str(s) for s in sinks)
        self.edges = tuple((str(u), str(v)) for u, v in edges)
        self._cache: dict = {}
        # recolorings and reflections of a validated graph skip the planarity check
        self._embedding_checked = _embedding_checked
        self._validate()

    # basic structure -------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.sources)

    @property
    def vertex_ids(self) -> list:
        return list(self.pos)

    @property
    def internal(self) -> list:
        return [v for v in self.pos if v in self.color]

    def is_boundary(self, v: str) -> bool:
        return v not in self.color

    def boundary_label(self, v: str):
        if v in self._source_index:
            return ("source", self._source_index[v])
        if v in self._sink_index:
            return ("sink", self._sink_index[v])
        return None

    def incident(self, v: str) -> list:
        return self._incident[v]

    def degree(self, v: str) -> int:
        return len(self._incident[v])

    def _validate(self) -> None:
        if len(self.sources) != len(self.sinks):
            raise InvalidGraph("numbers of sources and sinks differ")
        r = self.rect
        if not (r.x0 < r.x1 and r.y0 < r.y1):
            raise InvalidGraph("empty rectangle")
        self._source_index = {v: i for i, v in enumerate(self.sources)}
        self._sink_index = {v: i for i, v in enumerate(self.sinks)}
        boundary = set(self.sources) | set(self.sinks)
        if len(boundary) != 2 * len(self.sources):
            raise InvalidGraph("repeated boundary vertex")
        for v in self.pos:
            if v in boundary and v in self.color:
                raise InvalidGraph(f"boundary vertex {v} has a color")
            if v not in boundary and v not in self.color:
                raise InvalidGraph(f"internal vertex {v} has no color")
        for side, xs in ((self.sources, r.x0), (self.sinks, r.x1)):
            last = r.y0
            for v in side:
                x, y = self.pos[v]
                if x != xs:
                    raise InvalidGraph(f"boundary vertex {v} is not on its side")
                if not (last < y < r.y1):
                    raise InvalidGraph("boundary vertices must be ordered bottom-up inside the side")
                last = y
        for v in self.color:
            x, y = self.pos[v]
            if not (r.x0 < x < r.x1 and r.y0 < y < r.y1):
                raise InvalidGraph(f"internal vertex {v} is not inside the rectangle")
        self._incident = {v: [] for v in self.pos}
        for k, (u, v) in enumerate(self.edges):
            if u not in self.pos or v not in self.pos:
                raise InvalidGraph(f"edge {k} has an unknown endpoint")
            if u == v:
                raise InvalidGraph(f"edge {k} is a self-loop")
            self._incident[u].append(k)
            self._incident[v].append(k)
        for v in boundary:
            if len(self._incident[v]) != 1:
                raise InvalidGraph(f"boundary vertex {v} is not univalent")
        if not self._embedding_checked:
            self._check_planar()
        self._check_connected()

    def _check_connected(self) -> None:
        if not self.pos:
            return
        # boundary vertices are joined through the frame of the rectangle
        seen = set(self.sources) | set(self.sinks)
        if not seen:
            seen = {next(iter(self.pos))}
        stack = list(seen)
        while stack:
            v = stack.pop()
            for k in self._incident[v]:
                w = self.other(k, v)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.pos):
            raise InvalidGraph("graph is not connected")

    def _check_planar(self) -> None:
        segs = [(self.pos[u], self.pos[v], u, v) for u, v in self.edges]
        # float bounding boxes only prune pairs; every remaining test is exact
        eps = 1e-9
        boxes = []
        for p, q, _u, _v in segs:
            xs, ys = (float(p[0]), float(q[0])), (float(p[1]), float(q[1]))
            boxes.append((min(xs) - eps, max(xs) + eps, min(ys) - eps, max(ys) + eps))
        fpos = {w: (float(c[0]), float(c[1])) for w, c in self.pos.items()}

        def apart(a, b):
            return a[1] < b[0] or b[1] < a[0] or a[3] < b[2] or b[3] < a[2]

        for k, (p, q, u, v) in enumerate(segs):
            if p == q:
                raise NonPlanarEmbedding(f"edge {k} has zero length")
            x0, x1, y0, y1 = boxes[k]
            for w, c in self.pos.items():
                fx_, fy_ = fpos[w]
                if not (x0 <= fx_ <= x1 and y0 <= fy_ <= y1):
                    continue
                if w != u and w != v and _orient(p, q, c) == 0 and _on_segment(p, q, c):
                    raise NonPlanarEmbedding(f"vertex {w} lies on edge {k}")
        for i in range(len(segs)):
            p1, p2, u1, v1 = segs[i]
            for j in range(i + 1, len(segs)):
                if apart(boxes[i], boxes[j]):
                    continue
                q1, q2, u2, v2 = segs[j]
                shared = {u1, v1} & {u2, v2}
                if shared:
                    if {u1, v1} == {u2, v2}:
                        raise NonPlanarEmbedding(f"edges {i} and {j} overlap")
                    s = shared.pop()
                    a = p2 if u1 == s else p1
                    b = q2 if u2 == s else q1
                    o = self.pos[s]
                    if _orient(o, a, b) == 0 and (a[0] - o[0]) * (b[0] - o[0]) + (a[1] - o[1]) * (b[1] - o[1]) > 0:
                        raise NonPlanarEmbedding(f"edges {i} and {j} overlap")
                    continue
                if _segments_cross(p1, p2, q1, q2):
                    raise NonPlanarEmbedding(f"edges {i} and {j} cross")

    def other(self, k: int, v: str) -> str:
        u, w = self.edges[k]
        return w if v == u else u

    # combinatorial map with frame ----------------------------------------
    def _ext(self):
        if "ext" in self._cache:
            return self._cache["ext"]
        r = self.rect
        pos = dict(self.pos)
        pos.update({
            "#bl": (r.x0, r.y0), "#br": (r.x1, r.y0),
            "#tr": (r.x1, r.y1), "#tl": (r.x0, r.y1),
        })
        ring = ["#bl", "#br", *self.sinks, "#tr", "#tl", *reversed(self.sources), "#bl"]
        edges = list(self.edges)
        frame_start = len(edges)
        for a, b in zip(ring, ring[1:]):
            edges.append((a, b))
        rot: dict = {v: [] for v in pos}
        for k, (u, v) in enumerate(edges):
            rot[u].append(2 * k)
            rot[v].append(2 * k + 1)

        def dart_dir(d):
            u, v = edges[d >> 1]
            if d & 1:
                u, v = v, u
            return (pos[v][0] - pos[u][0], pos[v][1] - pos[u][1])

        for v in rot:
            rot[v].sort(key=functools.cmp_to_key(lambda a, b: _cmp_dirs(dart_dir(a), dart_dir(b))))
        position = {}
        for v, ds in rot.items():
            for i, d in enumerate(ds):
                position[d] = (v, i)
        ext = {
            "pos": pos, "edges": edges, "frame_start": frame_start, "rot": rot,
            "position": position, "top_dart": 2 * (frame_start + len(self.sinks) + 2),
            "bottom_dart": 2 * frame_start,
        }
        self._cache["ext"] = ext
        return ext

    def tail(self, d: int) -> str:
        u, v = self._ext()["edges"][d >> 1]
        return v if d & 1 else u

    def head(self, d: int) -> str:
        u, v = self._ext()["edges"][d >> 1]
        return u if d & 1 else v

    def rot_next(self, d: int) -> int:
        """Next dart counter-clockwise around the tail of d."""
        ext = self._ext()
        v, i = ext["position"][d]
        ring = ext["rot"][v]
        return ring[(i + 1) % len(ring)]

    def rot_prev(self, d: int) -> int:
        ext = self._ext()
        v, i = ext["position"][d]
        ring = ext["rot"][v]
        return ring[(i - 1) % len(ring)]

    def face_next(self, d: int) -> int:
        """Next dart of the face to the left of d."""
        return self.rot_prev(d ^ 1)

    def is_frame_dart(self, d: int) -> bool:
        return (d >> 1) >= self._ext()["frame_start"]

    def _trace(self):
        if "trace" in self._cache:
            return self._cache["trace"]
        ext = self._ext()
        ndarts = 2 * len(ext["edges"])
        face_of = [-1] * ndarts
        cycles = []
        for d0 in range(ndarts):
            if face_of[d0] >= 0:
                continue
            cyc = []
            d = d0
            while face_of[d] < 0:
                face_of[d] = len(cycles)
                cyc.append(d)
                d = self.face_next(d)
            if d != d0:
                raise NonPlanarEmbedding("inconsistent rotation system")
            cycles.append(cyc)
        outer = face_of[ext["bottom_dart"] ^ 1]
        for k in range(ext["frame_start"], len(ext["edges"])):
            if face_of[2 * k + 1] != outer:
                raise NonPlanarEmbedding("frame is not a single outer face")
        nv = len(ext["pos"])
        ne = len(ext["edges"])
        if nv - ne + len(cycles) != 2:
            raise NonPlanarEmbedding("Euler characteristic check failed")
        self._cache["trace"] = (cycles, face_of, outer)
        return self._cache["trace"]

    def faces(self) -> list:
        """Internal faces, sorted by canonical id."""
        if "faces" in self._cache:
            return self._cache["faces"]
        ext = self._ext()
        cycles, face_of, outer = self._trace()
        mid = self.rect.midline
        faces = []
        self._cache["cycle_to_face"] = {}
        for ci, cyc in enumerate(cycles):
            if ci == outer:
                continue
            word = tuple((d >> 1, not (d & 1)) for d in cyc if not self.is_frame_dart(d))
            if not word:
                raise InvalidGraph("face bounded only by the frame")
            fid = _canonical_id(word)
            polygon = tuple(ext["pos"][self.tail(d)] for d in cyc)
            region = _region(polygon, mid, self.rect)
            faces.append(Face(
                id=fid, darts=tuple(cyc), word=_canonical_rotation(word),
                is_top=ext["top_dart"] in cyc, is_bottom=ext["bottom_dart"] in cyc,
                region=region, polygon=polygon,
            ))
        faces.sort(key=lambda f: _id_key(f.id))
        ids = [f.id for f in faces]
        if len(set(ids)) != len(ids):
            raise InvalidGraph("face ids collide")
        self._cache["faces"] = faces
        self._cache["face_by_id"] = {f.id: f for f in faces}
        self._cache["dart_face"] = {}
        for f in faces:
            for d in f.darts:
                self._cache["dart_face"][d] = f.id
        return faces

    def face(self, fid: str) -> Face:
        self.faces()
        try:
            return self._cache["face_by_id"][fid]
        except KeyError:
            raise InvalidGraph(f"no face with id {fid!r}") from None

    def face_ids(self) -> list:
        return [f.id for f in self.faces()]

    def face_of_dart(self, d: int):
        """Face id to the left of dart d, or None for the outer face."""
        self.faces()
        return self._cache["dart_face"].get(d)

    def top_face(self) -> Face:
        return next(f for f in self.faces() if f.is_top)

    def bottom_face(self) -> Face:
        return next(f for f in self.faces() if f.is_bottom)

    def face_at(self, x, y) -> str:
        """Id of the face whose interior contains the point (x, y)."""
        pt = (_rational(x), _rational(y))
        fx_, fy_ = float(pt[0]), float(pt[1])
        for f in self.faces():
            xs = [float(p[0]) for p in f.polygon]
            ys = [float(p[1]) for p in f.polygon]
            if not (min(xs) - 1e-9 <= fx_ <= max(xs) + 1e-9 and min(ys) - 1e-9 <= fy_ <= max(ys) + 1e-9):
                continue
            inside = _point_in_polygon(f.polygon, pt)
            if inside is None:
                raise InvalidGraph("point lies on an edge")
            if inside:
                return f.id
        raise InvalidGraph("point is outside the rectangle")

    # derived graphs ------------------------------------------------------
    def with_colors(self, colors: Mapping[str, str]) -> "PlabicGraph":
        verts = {v: (*self.pos[v], colors.get(v, self.color.get(v))) for v in self.pos}
        return PlabicGraph(self.rect, verts, self.sources, self.sinks, self.edges,
                           _embedding_checked=True)

    def vertex_table(self) -> dict:
        return {v: (*self.pos[v], self.color.get(v)) for v in self.pos}

    def __repr__(self):
        return f"PlabicGraph(n={self.n}, V={len(self.pos)}, E={len(self.edges)})"


def _id_key(fid: str):
    return tuple((int(t.rstrip("r")), t.endswith("r")) for t in fid.split("."))


def _canonical_rotation(word: tuple) -> tuple:
    tokens = [(e, not fwd) for e, fwd in word]
    best = min(range(len(word)), key=lambda i: tokens[i:] + tokens[:i])
    return word[best:] + word[:best]


def _canonical_id(word: tuple) -> str:
    rot = _canonical_rotation(word)
    return ".".join(f"{e}" if fwd else f"{e}r" for e, fwd in rot)


def _point_in_polygon(polygon, pt):
    """True/False for inside/outside (even-odd rule), None when on the boundary."""
    x, y = pt
    inside = False
    m = len(polygon)
    for i in range(m):
        p, q = polygon[i], polygon[(i + 1) % m]
        if _orient(p, q, pt) == 0 and _on_segment(p, q, pt):
            return None
        if (p[1] > y) != (q[1] > y):
            xint = p[0] + (y - p[1]) * (q[0] - p[0]) / (q[1] - p[1])
            if x < xint:
                inside = not inside
    return inside


def _region(polygon, mid, rect) -> str:
    xs = {rect.x0, rect.x1}
    m = len(polygon)
    for i in range(m):
        p, q = polygon[i], polygon[(i + 1) % m]
        if p[1] == mid:
            xs.add(p[0])
        if (p[1] - mid) * (q[1] - mid) < 0:
            xs.add(p[0] + (mid - p[1]) * (q[0] - p[0]) / (q[1] - p[1]))
    xs = sorted(x for x in xs if rect.x0 <= x <= rect.x1)
    for a, b in zip(xs, xs[1:]):
        if _point_in_polygon(polygon, ((a + b) / 2, mid)):
            return "0"
    ys = [p[1] for p in polygon]
    if max(ys) > mid and min(ys) >= mid:
        return "+"
    if min(ys) < mid and max(ys) <= mid:
        return "-"
    raise InvalidGraph("face straddles the midline without meeting it")


# orientations and networks -----------------------------------------------

def _check_orientation(g: PlabicGraph, orient: Sequence[bool]) -> bool:
    ins = {v: 0 for v in g.pos}
    outs = {v: 0 for v in g.pos}
    for k, (u, v) in enumerate(g.edges):
        t, h = (u, v) if orient[k] else (v, u)
        outs[t] += 1
        ins[h] += 1
    for v in g.sources:
        if outs[v] != 1:
            return False
    for v in g.sinks:
        if ins[v] != 1:
            return False
    for v, c in g.color.items():
        if c == WHITE and ins[v] != 1:
            return False
        if c == BLACK and outs[v] != 1:
            return False
    return True


def perfect_orientations(g: PlabicGraph, limit: int | None = None) -> list:
    """All perfect orientations (tuples of bools, True = stored direction)."""
    order = []
    seen = set()
    for start in g.sources + tuple(g.pos):
        dq = deque([start])
        while dq:
            v = dq.popleft()
            for k in g.incident(v):
                if k not in seen:
                    seen.add(k)
                    order.append(k)
                    dq.append(g.other(k, v))
    ins = {v: 0 for v in g.pos}
    outs = {v: 0 for v in g.pos}
    left = {v: g.degree(v) for v in g.pos}
    orient = [True] * len(g.edges)
    results = []

    def need_in(v):
        if v in g._sink_index:
            return 1
        if g.color.get(v) == WHITE:
            return 1
        return None

    def need_out(v):
        if v in g._source_index:
            return 1
        if g.color.get(v) == BLACK:
            return 1
        return None

    def feasible(v) -> bool:
        ni, no = need_in(v), need_out(v)
        if v in g._source_index:
            return ins[v] == 0 and outs[v] <= 1 and outs[v] + left[v] >= 1
        if v in g._sink_index:
            return outs[v] == 0 and ins[v] <= 1 and ins[v] + left[v] >= 1
        if ni is not None:
            return ins[v] <= 1 and ins[v] + left[v] >= 1
        if no is not None:
            return outs[v] <= 1 and outs[v] + left[v] >= 1
        return True

    def rec(i):
        if limit is not None and len(results) >= limit:
            return
        if i == len(order):
            results.append(tuple(orient))
            return
        k = order[i]
        u, v = g.edges[k]
        for forward in (True, False):
            t, h = (u, v) if forward else (v, u)
            outs[t] += 1
            ins[h] += 1
            left[u] -= 1
            left[v] -= 1
            if feasible(u) and feasible(v):
                orient[k] = forward
                rec(i + 1)
            outs[t] -= 1
            ins[h] -= 1
            left[u] += 1
            left[v] += 1

    rec(0)
    return results


def find_perfect_orientation(g: PlabicGraph):
    found = perfect_orientations(g, limit=1)
    return found[0] if found else None


def nondegenerate(g: PlabicGraph) -> bool:
    """True iff both g and its recoloring are perfectly orientable."""
    if find_perfect_orientation(g) is None:
        raise NotPerfectlyOrientable("graph has no perfect orientation")
    return find_perfect_orientation(recolor(g)) is not None


def _value(x):
    if isinstance(x, (Scalar, Expr)):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Scalar.coerce(x)


def _is_zero(x) -> bool:
    return isinstance(x, Scalar) and not x


class Network:
    """A plabic graph with a perfect orientation and nonzero edge weights."""

    def __init__(self, graph: PlabicGraph, orientation: Sequence[bool], weights: Sequence):
        self.graph = graph
        self.orientation = tuple(bool(o) for o in orientation)
        self.weights = tuple(_value(w) for w in weights)
        if len(self.orientation) != len(graph.edges) or len(self.weights) != len(graph.edges):
            raise InvalidGraph("orientation/weights length does not match the edges")
        if not _check_orientation(graph, self.orientation):
            raise NotPerfect("orientation is not perfect")
        for w in self.weights:
            if _is_zero(w):
                raise InvalidGraph("edge weights must be nonzero")

    def arc(self, k: int) -> tuple:
        u, v = self.graph.edges[k]
        return (u, v) if self.orientation[k] else (v, u)

    def arcs(self) -> list:
        """(tail, head, weight, edge) for every edge."""
        return [(*self.arc(k), self.weights[k], k) for k in range(len(self.weights))]

    def with_weights(self, weights) -> "Network":
        return Network(self.graph, self.orientation, weights)

    def __repr__(self):
        return f"Network({self.graph!r})"


class FaceWeighting:
    """Map face id -> nonzero value; ``mode`` is 'full' or 'projective'."""

    def __init__(self, values: Mapping, mode: str = "full"):
        if mode not in ("full", "projective"):
            raise ValueError(f"bad mode {mode!r}")
        self.mode = mode
        self.values = {str(k): _value(v) for k, v in values.items()}

    def __getitem__(self, fid):
        return self.values[fid]

    def __iter__(self):
        return iter(self.values)

    def items(self):
        return self.values.items()

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, FaceWeighting):
            return NotImplemented
        if self.mode != other.mode or set(self.values) != set(other.values):
            return False
        for k, v in self.values.items():
            w = other.values[k]
            if isinstance(v, Expr) or isinstance(w, Expr):
                if not probably_equal(v, w):
                    return False
            elif v != w:
                return False
        return True

    def product(self):
        return prod(self.values.values())

    def map(self, fn) -> "FaceWeighting":
        return FaceWeighting({k: fn(v) for k, v in self.values.items()}, self.mode)

    def inverted(self) -> "FaceWeighting":
        return self.map(lambda v: 1 / v)

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in self.values.items())
        return f"FaceWeighting({self.mode}, {{{inner}}})"


def prod(values: Iterable):
    acc = ONE
    for v in values:
        acc = acc * v
    return acc


def face_weights_of(net: Network) -> FaceWeighting:
    g = net.graph
    values = {}
    for f in g.faces():
        acc = ONE
        for e, eps in f.boundary(net.orientation):
            acc = acc * net.weights[e] if eps > 0 else acc / net.weights[e]
        values[f.id] = acc
    return FaceWeighting(values, "full")


def gauge(net: Network, v: str, lam) -> Network:
    """Multiply incoming edges at v by lam and outgoing edges by 1/lam."""
    g = net.graph
    if g.is_boundary(v):
        raise InvalidGraph("gauge transformations act at internal vertices")
    lam = _value(lam)
    if _is_zero(lam):
        raise ZeroLambda("gauge parameter must be nonzero")
    weights = list(net.weights)
    for k in g.incident(v):
        tail, head = net.arc(k)
        if head == v:
            weights[k] = weights[k] * lam
        if tail == v:
            weights[k] = weights[k] / lam
    return Network(g, net.orientation, weights)


def is_one(x) -> bool:
    if isinstance(x, Expr):
        return probably_equal(x, 1)
    return x == 1


def complete_weighting(g: PlabicGraph, fw: FaceWeighting) -> FaceWeighting:
    """Full weighting from fw; a projective one gets top = 1 and the bottom fixed by the product."""
    if fw.mode == "full":
        if set(fw.values) != set(g.face_ids()):
            raise InvalidGraph("weighting does not match the faces of the graph")
        return fw
    top, bottom = g.top_face().id, g.bottom_face().id
    others = [f for f in g.face_ids() if f not in (top, bottom)]
    missing = [f for f in others if f not in fw.values]
    if missing:
        raise InvalidGraph(f"projective weighting misses faces {missing}")
    values = {f: fw.values[f] for f in others}
    values[top] = ONE
    if bottom != top:
        values[bottom] = 1 / prod(values[f] for f in others)
    return FaceWeighting({f: values[f] for f in g.face_ids()}, "full")


def edge_weights_from_faces(g: PlabicGraph, fw: FaceWeighting, orientation=None,
                            check_product: bool = True) -> Network:
    """A network on g (given orientation) whose face weights are fw.

    A spanning tree containing all frame edges except the top one gets
    weight 1 on its real edges; the remaining edges are solved face by face
    from the leaves of the dual tree towards the outer face.  The top face is
    never used, so with ``check_product=False`` the result is a function of
    the other face weights that extends the map off the product-one locus.
    """
    if orientation is None:
        orientation = find_perfect_orientation(g)
        if orientation is None:
            raise NoPerfectOrientation("graph has no perfect orientation")
    elif not _check_orientation(g, orientation):
        raise NoPerfectOrientation("given orientation is not perfect")
    fw = complete_weighting(g, fw)
    if check_product and not is_one(fw.product()):
        raise ProductNotOne("face weights must multiply to 1")
    tree, cotree_parent_order = _gauge_section(g)
    weights: list = [None] * len(g.edges)
    for k in tree:
        if k < len(g.edges):
            weights[k] = ONE
    for fid, k in cotree_parent_order:
        f = g.face(fid)
        acc = ONE
        eps_k = None
        for e, eps in f.boundary(orientation):
            if e == k:
                eps_k = eps
                continue
            acc = acc * weights[e] if eps > 0 else acc / weights[e]
        target = fw[fid] / acc
        weights[k] = target if eps_k > 0 else 1 / target
    return Network(g, orientation, weights)


def _gauge_section(g: PlabicGraph):
    if "gauge_section" in g._cache:
        return g._cache["gauge_section"]
    ext = g._ext()
    edges = ext["edges"]
    fs = ext["frame_start"]
    top_edge = ext["top_dart"] >> 1
    parent = {v: v for v in ext["pos"]}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    tree = set()
    for k in list(range(fs, len(edges))) + list(range(fs)):
        if k == top_edge:
            continue
        a, b = find(edges[k][0]), find(edges[k][1])
        if a != b:
            parent[a] = b
            tree.add(k)
    cycles, face_of, outer = g._trace()
    g.faces()
    # dual BFS over cotree edges from the outer face
    cotree = [k for k in range(len(edges)) if k not in tree]
    adj: dict = {}
    for k in cotree:
        fa, fb = face_of[2 * k], face_of[2 * k + 1]
        adj.setdefault(fa, []).append((fb, k))
        adj.setdefault(fb, []).append((fa, k))
    order = []
    seen = {outer}
    dq = deque([outer])
    while dq:
        f = dq.popleft()
        for h, k in sorted(adj.get(f, []), key=lambda t: t[1]):
            if h not in seen:
                seen.add(h)
                order.append((h, k))
                dq.append(h)
    if len(seen) != len(cycles):
        raise NonPlanarEmbedding("dual cotree is not spanning")
    cyc_to_id = {}
    for f in g.faces():
        cyc_to_id[face_of[f.darts[0]]] = f.id
    solve = []
    for h, k in reversed(order):
        if k == top_edge:
            continue
        solve.append((cyc_to_id[h], k))
    result = (tree, solve)
    g._cache["gauge_section"] = result
    return result


# concatenation --------------------------------------------------------------

def _fresh(name: str, taken: set) -> str:
    new = name
    while new in taken:
        new = new + "'"
    return new


def concat_graphs(g1: PlabicGraph, g2: PlabicGraph):
    """Glue the sinks of g1 to the sources of g2.

    Returns ``(g, edge_map1, edge_map2, flip2)`` where edge_map maps old edge
    indices to new ones and ``flip2[k]`` is True when the stored direction of
    g2's edge k is reversed in g.
    """
    if g1.n != g2.n:
        raise ValencyMismatch(f"valencies {g1.n} and {g2.n} differ")
    if (g1.rect.y0, g1.rect.y1) != (g2.rect.y0, g2.rect.y1):
        raise ValencyMismatch("rectangles have different heights")
    for s, t in zip(g1.sinks, g2.sources):
        if g1.pos[s][1] != g2.pos[t][1]:
            raise ValencyMismatch("sink and source heights do not match")
    shift = g1.rect.x1 - g2.rect.x0
    taken = set(g1.pos)
    rename = {}
    for v in g2.pos:
        if v in g2._source_index:
            continue
        rename[v] = _fresh(v, taken)
        taken.add(rename[v])
    verts = {v: d for v, d in g1.vertex_table().items() if v not in g1._sink_index}
    for v, (x, y, c) in g2.vertex_table().items():
        if v in g2._source_index:
            continue
        verts[rename[v]] = (x + shift, y, c)
    edges = []
    emap1 = {}
    emap2 = {}
    flip2 = {}
    glue = {}
    for k, (u, v) in enumerate(g1.edges):
        emap1[k] = len(edges)
        if v in g1._sink_index or u in g1._sink_index:
            i = g1._sink_index.get(v, g1._sink_index.get(u))
            src2 = g2.sources[i]
            k2 = g2.incident(src2)[0]
            far = rename[g2.other(k2, src2)]
            new = (u, far) if v in g1._sink_index else (far, v)
            edges.append(new)
            emap2[k2] = emap1[k]
            # g1 stores (x, sink): new edge points g1-side -> g2-side
            g1_to_g2 = v in g1._sink_index
            g2_from_source = g2.edges[k2][0] == src2
            flip2[k2] = g1_to_g2 != g2_from_source
            glue[i] = emap1[k]
        else:
            edges.append((u, v))
    for k, (u, v) in enumerate(g2.edges):
        if k in emap2:
            continue
        emap2[k] = len(edges)
        flip2[k] = False
        edges.append((rename[u], rename[v]))
    rect = Rect(g1.rect.x0, g2.rect.x1 + shift, g1.rect.y0, g1.rect.y1)
    sinks = [rename[s] for s in g2.sinks]
    g = PlabicGraph(rect, verts, g1.sources, sinks, edges)
    return g, emap1, emap2, flip2


def _map_faces(g_old: PlabicGraph, g_new: PlabicGraph, emap: Mapping, flip: Mapping | None = None) -> dict:
    out = {}
    for f in g_old.faces():
        e, fwd = f.word[0]
        if flip and flip.get(e):
            fwd = not fwd
        d = 2 * emap[e] + (0 if fwd else 1)
        out[f.id] = g_new.face_of_dart(d)
    return out


def concat(g1: PlabicGraph, fw1: FaceWeighting, g2: PlabicGraph, fw2: FaceWeighting):
    """Concatenate face-weighted graphs; merged faces multiply their weights."""
    g, emap1, emap2, flip2 = concat_graphs(g1, g2)
    fw1 = complete_weighting(g1, fw1)
    fw2 = complete_weighting(g2, fw2)
    values = {fid: ONE for fid in g.face_ids()}
    for old, new in _map_faces(g1, g, emap1).items():
        values[new] = values[new] * fw1[old]
    for old, new in _map_faces(g2, g, emap2, flip2).items():
        values[new] = values[new] * fw2[old]
    return g, FaceWeighting(values, "full")


def concat_networks(n1: Network, n2: Network) -> Network:
    """Concatenation of networks; glued edges carry the product weight."""
    g, emap1, emap2, flip2 = concat_graphs(n1.graph, n2.graph)
    orient = [True] * len(g.edges)
    weights = [ONE] * len(g.edges)
    for k, new in emap1.items():
        orient[new] = n1.orientation[k]
        weights[new] = n1.weights[k]
    glued = set(emap1.values())
    for k, new in emap2.items():
        if new in glued:
            weights[new] = weights[new] * n2.weights[k]
        else:
            orient[new] = n2.orientation[k] != flip2[k]
            weights[new] = n2.weights[k]
    return Network(g, orient, weights)


def concat_many(graphs: Sequence[PlabicGraph]) -> PlabicGraph:
    g = graphs[0]
    for h in graphs[1:]:
        g = concat_graphs(g, h)[0]
    return g


def identity_graph(n: int, rows: Sequence | None = None, width=1) -> PlabicGraph:
    """n straight wires at heights 1..n (or ``rows``) in a box of the given width."""
    ys = [Fraction(r) for r in (rows or range(1, n + 1))]
    y0 = Fraction(0) if rows is None else min(ys) - 1
    y1 = Fraction(n + 1) if rows is None else max(ys) + 1
    verts = {}
    edges = []
    sources, sinks = [], []
    for i, y in enumerate(ys, 1):
        verts[f"s{i}"] = (0, y, None)
        verts[f"t{i}"] = (width, y, None)
        sources.append(f"s{i}")
        sinks.append(f"t{i}")
        edges.append((f"s{i}", f"t{i}"))
    return PlabicGraph(Rect(Fraction(0), Fraction(width), y0, y1), verts, sources, sinks, edges)


# reflection, recoloring, isomorphism ------------------------------------------

def reflect(g: PlabicGraph) -> PlabicGraph:
    """Mirror in the midline; colors are kept and boundary labels reverse."""
    s = g.rect.y0 + g.rect.y1
    verts = {v: (x, s - y, c) for v, (x, y, c) in g.vertex_table().items()}
    return PlabicGraph(g.rect, verts, tuple(reversed(g.sources)), tuple(reversed(g.sinks)), g.edges,
                       _embedding_checked=True)


def recolor(g: PlabicGraph) -> PlabicGraph:
    return g.with_colors({v: opposite(c) for v, c in g.color.items()})


@dataclass
class Isomorphism:
    vertex_map: dict
    edge_map: dict
    same_direction: dict
    face_map: dict


def _vertex_signature(g: PlabicGraph, v: str, flip_colors: bool):
    if v in _CORNERS:
        return ("corner", v)
    label = g.boundary_label(v)
    if label is not None:
        return label
    c = g.color[v]
    return ("internal", opposite(c) if flip_colors else c)


def isomorphism(g: PlabicGraph, h: PlabicGraph, flip_colors: bool = False):
    """Orientation-preserving combinatorial isomorphism g -> h fixing boundary labels.

    With ``flip_colors`` the map must send black to white and vice versa.
    Returns an :class:`Isomorphism` or None.
    """
    if g.n != h.n or len(g.edges) != len(h.edges) or len(g.pos) != len(h.pos):
        return None
    if g.n == 0:
        return None
    eg, eh = g._ext(), h._ext()
    start_g = next(d for d in eg["rot"][g.sources[0]] if not g.is_frame_dart(d))
    start_h = next(d for d in eh["rot"][h.sources[0]] if not h.is_frame_dart(d))
    dmap = {start_g: start_h}
    vmap: dict = {}
    stack = [start_g]
    while stack:
        d = stack.pop()
        d2 = dmap[d]
        if g.is_frame_dart(d) != h.is_frame_dart(d2):
            return None
        vt, vt2 = g.tail(d), h.tail(d2)
        if vmap.setdefault(vt, vt2) != vt2:
            return None
        if _vertex_signature(g, vt, flip_colors) != _vertex_signature(h, vt2, False):
            return None
        for nd, nd2 in ((g.rot_next(d), h.rot_next(d2)), (d ^ 1, d2 ^ 1)):
            if nd in dmap:
                if dmap[nd] != nd2:
                    return None
            else:
                dmap[nd] = nd2
                stack.append(nd)
    if len(dmap) != 2 * len(eg["edges"]) or len(set(dmap.values())) != len(dmap):
        return None
    if len(set(vmap.values())) != len(vmap):
        return None
    edge_map = {}
    same = {}
    for k in range(len(g.edges)):
        d2 = dmap[2 * k]
        edge_map[k] = d2 >> 1
        same[k] = not (d2 & 1)
    face_map = {}
    for f in g.faces():
        face_map[f.id] = h.face_of_dart(dmap[f.darts[0]])
    vmap = {v: w for v, w in vmap.items() if v not in _CORNERS}
    return Isomorphism(vmap, edge_map, same, face_map)


def transport(iso: Isomorphism, fw: FaceWeighting) -> FaceWeighting:
    """Push a weighting forward along an isomorphism."""
    return FaceWeighting({iso.face_map[k]: v for k, v in fw.items()}, fw.mode)


# random data -------------------------------------------------------------

def random_positive(rng: random.Random, bound: int = 9) -> Scalar:
    return Scalar(Fraction(rng.randint(1, bound), rng.randint(1, bound)))


def random_nonzero(rng: random.Random, bound: int = 9) -> Scalar:
    s = random_positive(rng, bound)
    return s if rng.random() < 0.5 else -s


def random_weighting(g: PlabicGraph, rng: random.Random, positive: bool = True) -> FaceWeighting:
    """Random full weighting (the top face absorbs the product constraint)."""
    draw = random_positive if positive else random_nonzero
    values = {f: draw(rng) for f in g.face_ids()}
    top = g.top_face().id
    others = prod(v for f, v in values.items() if f != top)
    values[top] = 1 / others
    return FaceWeighting(values, "full")


# JSON ---------------------------------------------------------------------

def _lit(x) -> str:
    if isinstance(x, Fraction):
        return format_scalar(Scalar(x))
    return format_scalar(Scalar.coerce(x))


def to_json(g: PlabicGraph, net: Network | None = None, fw: FaceWeighting | None = None) -> dict:
    r = g.rect
    out = {
        "rect": {"x0": _lit(r.x0), "x1": _lit(r.x1), "y0": _lit(r.y0), "y1": _lit(r.y1)},
        "vertices": [],
        "sources": list(g.sources),
        "sinks": list(g.sinks),
        "edges": [],
    }
    for v, (x, y, c) in g.vertex_table().items():
        item = {"id": v, "x": _lit(x), "y": _lit(y)}
        if c is not None:
            item["color"] = c
        out["vertices"].append(item)
    for k, (u, v) in enumerate(g.edges):
        item = {"u": u, "v": v}
        if net is not None:
            t, h = net.arc(k)
            item["dir"] = f"{t}->{h}"
            w = net.weights[k]
            item["w"] = str(w) if isinstance(w, Scalar) else str(w)
        out["edges"].append(item)
    if fw is not None:
        out["face_weights"] = {"mode": fw.mode, "values": {k: str(v) for k, v in fw.items()}}
    return out


def from_json(obj: Mapping):
    """Parse the graph JSON format.

    Returns ``(graph, network_or_None, weighting_or_None)``.  A network is
    built when every edge carries ``dir`` (weights default to 1).
    """
    try:
        r = obj["rect"]
        rect = Rect(*[_rational(r[key]) for key in ("x0", "x1", "y0", "y1")])
        verts = {}
        for item in obj["vertices"]:
            verts[str(item["id"])] = (_rational(item["x"]), _rational(item["y"]), item.get("color"))
        edges = [(str(e["u"]), str(e["v"])) for e in obj["edges"]]
        g = PlabicGraph(rect, verts, [str(s) for s in obj["sources"]], [str(s) for s in obj["sinks"]], edges)
    except (KeyError, TypeError) as exc:
        raise InvalidGraph(f"malformed graph JSON: {exc}") from None
    net = None
    if obj["edges"] and all("dir" in e for e in obj["edges"]):
        orient = []
        for e in obj["edges"]:
            t, _, h = str(e["dir"]).partition("->")
            t, h = t.strip(), h.strip()
            if (t, h) == (str(e["u"]), str(e["v"])):
                orient.append(True)
            elif (t, h) == (str(e["v"]), str(e["u"])):
                orient.append(False)
            else:
                raise InvalidGraph(f"bad dir {e['dir']!r}")
        weights = [parse_scalar(str(e.get("w", "1"))) for e in obj["edges"]]
        net = Network(g, orient, weights)
    fw = None
    if "face_weights" in obj:
        spec = obj["face_weights"]
        values = {str(k): parse_scalar(str(v)) for k, v in spec["values"].items()}
        fw = FaceWeighting(values, spec.get("mode", "full"))
    return g, net, fw
