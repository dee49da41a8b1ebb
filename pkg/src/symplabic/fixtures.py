"""Small worked-example graphs used by tests, the CLI and the acceptance suite.

Each builder returns a :class:`PlabicGraph`; ``labels(g, points)`` turns
sample points into face ids so that faces can be referred to by name.
"""
from __future__ import annotations

from fractions import Fraction as F

from .plabic import BLACK, WHITE, Network, PlabicGraph, Rect
from .scalar import var


def labels(g: PlabicGraph, points: dict) -> dict:
    return {name: g.face_at(x, y) for name, (x, y) in points.items()}


# a 2-valent network with one directed cycle ------------------------------

CYCLE_EDGE_NAMES = "abcdefgh"


def cycle_graph() -> PlabicGraph:
    verts = {
        "s1": (-1, 1, None), "s2": (-1, 2, None), "t1": (2, 1, None), "t2": (2, 2, None),
        "A": (0, 1, BLACK), "B": (1, 1, WHITE), "C": (0, 2, BLACK), "D": (1, 2, WHITE),
    }
    # edge order: a b c d e f g h
    edges = [
        ("s2", "C"),  # a
        ("C", "D"),   # b
        ("D", "t2"),  # c
        ("A", "C"),   # d
        ("D", "B"),   # e
        ("s1", "A"),  # f
        ("B", "A"),   # g
        ("B", "t1"),  # h
    ]
    return PlabicGraph(Rect(F(-1), F(2), F(1, 4), F(11, 4)), verts, ["s1", "s2"], ["t1", "t2"], edges)


def cycle_network(weights=None) -> Network:
    """The cycle graph oriented along the stored edge directions.

    ``weights`` maps the letters a..h to values; missing letters become
    variables of the same name.
    """
    g = cycle_graph()
    weights = weights or {}
    ws = [weights.get(c, var(c)) for c in CYCLE_EDGE_NAMES]
    return Network(g, [True] * 8, ws)


CYCLE_FACE_POINTS = {
    "y1": (F(1, 2), F(12, 5)), "y2": (F(-1, 2), F(3, 2)), "y3": (F(1, 2), F(3, 2)),
    "y4": (F(3, 2), F(3, 2)), "y5": (F(1, 2), F(3, 5)),
}


# the symmetric 2-valent graph with a central square ------------------------

def square_graph() -> PlabicGraph:
    verts = {
        "s1": (-1, 1, None), "s2": (-1, 2, None), "t1": (2, 1, None), "t2": (2, 2, None),
        "A": (0, 1, BLACK), "B": (1, 1, WHITE), "C": (0, 2, WHITE), "D": (1, 2, BLACK),
    }
    edges = [("s1", "A"), ("B", "A"), ("A", "C"), ("C", "D"), ("s2", "C"),
             ("B", "t1"), ("D", "t2"), ("D", "B")]
    return PlabicGraph(Rect(F(-1), F(2), F(1, 4), F(11, 4)), verts, ["s1", "s2"], ["t1", "t2"], edges)


SQUARE_FACE_POINTS = CYCLE_FACE_POINTS


# two bridges whose concatenation is the square graph ---------------------

def _bridge(bottom: str, top: str) -> PlabicGraph:
    verts = {
        "s1": (-1, 1, None), "s2": (-1, 2, None), "t1": (1, 1, None), "t2": (1, 2, None),
        "A": (0, 1, bottom), "C": (0, 2, top),
    }
    edges = [("s1", "A"), ("A", "t1"), ("A", "C"), ("C", "t2"), ("s2", "C")]
    return PlabicGraph(Rect(F(-1), F(1), F(1, 4), F(11, 4)), verts, ["s1", "s2"], ["t1", "t2"], edges)


def raising_bridge() -> PlabicGraph:
    """White below black: the measurement is upper unitriangular."""
    return _bridge(WHITE, BLACK)


def lowering_bridge() -> PlabicGraph:
    return _bridge(BLACK, WHITE)


BRIDGE_FACE_POINTS = {
    "y1": (F(0), F(12, 5)), "y2": (F(-1, 2), F(3, 2)),
    "y3": (F(1, 2), F(3, 2)), "y4": (F(0), F(3, 5)),
}


# 3-valent graph with one midline square -----------------------------------

def orthogonal_square_graph() -> PlabicGraph:
    verts = {
        "s1": (-1, -2, None), "s2": (-1, 0, None), "s3": (-1, 2, None),
        "t1": (3, -2, None), "t2": (3, 0, None), "t3": (3, 2, None),
        "A": (F(3, 10), 0, BLACK), "B": (1, F(7, 10), WHITE),
        "C": (F(17, 10), 0, BLACK), "D": (1, F(-7, 10), WHITE),
        "E": (1, 2, WHITE), "F": (1, -2, BLACK),
    }
    edges = [
        ("s2", "A"), ("A", "B"), ("B", "C"), ("C", "D"), ("D", "A"), ("C", "t2"),
        ("B", "E"), ("s3", "E"), ("E", "t3"), ("D", "F"), ("s1", "F"), ("F", "t1"),
    ]
    return PlabicGraph(Rect(F(-1), F(3), F(-3), F(3)), verts, ["s1", "s2", "s3"], ["t1", "t2", "t3"], edges)


ORTHOGONAL_FACE_POINTS = {
    "top": (F(1), F(5, 2)), "bottom": (F(1), F(-5, 2)), "center": (F(1), F(0)),
    "upper_left": (F(0), F(1)), "lower_left": (F(0), F(-1)),
    "upper_right": (F(2), F(1)), "lower_right": (F(2), F(-1)),
}


# 4-valent symmetric graph with two squares ---------------------------------

def ladder_graph() -> PlabicGraph:
    verts = {
        "s0": (-1, 0, None), "s1": (-1, 1, None), "s2": (-1, 2, None), "s3": (-1, 3, None),
        "t0": (2, 0, None), "t1": (2, 1, None), "t2": (2, 2, None), "t3": (2, 3, None),
        "A": (0, 1, BLACK), "B": (1, 1, WHITE), "C": (0, 2, WHITE), "D": (1, 2, BLACK),
        "E": (0, 3, BLACK), "F": (1, 3, WHITE), "G": (0, 0, WHITE), "H": (1, 0, BLACK),
    }
    edges = [
        ("s0", "G"), ("s1", "A"), ("s2", "C"), ("s3", "E"),
        ("B", "A"), ("A", "G"), ("G", "H"), ("H", "B"), ("A", "C"),
        ("C", "D"), ("D", "F"), ("F", "E"), ("E", "C"), ("D", "B"),
        ("H", "t0"), ("B", "t1"), ("D", "t2"), ("F", "t3"),
    ]
    return PlabicGraph(
        Rect(F(-1), F(2), F(-3, 4), F(15, 4)), verts,
        ["s0", "s1", "s2", "s3"], ["t0", "t1", "t2", "t3"], edges,
    )


LADDER_FACE_POINTS = {
    "y1": (F(1, 2), F(33, 10)), "y2": (F(-1, 2), F(5, 2)), "y3": (F(1, 2), F(5, 2)),
    "y4": (F(3, 2), F(5, 2)), "y5": (F(-1, 2), F(3, 2)), "y6": (F(1, 2), F(3, 2)),
    "y7": (F(3, 2), F(3, 2)), "y2'": (F(-1, 2), F(1, 2)), "y3'": (F(1, 2), F(1, 2)),
    "y4'": (F(3, 2), F(1, 2)), "y1'": (F(1, 2), F(-3, 10)),
}


# 3-valent graph with two midline squares ------------------------------------

def double_square_graph() -> PlabicGraph:
    verts = {
        "s1": (F(-3, 2), -2, None), "s2": (F(-3, 2), 0, None), "s3": (F(-3, 2), 2, None),
        "t1": (F(13, 2), -2, None), "t2": (F(13, 2), 0, None), "t3": (F(13, 2), 2, None),
        "A": (F(3, 10), 0, BLACK), "B": (1, F(7, 10), WHITE),
        "C": (F(17, 10), 0, BLACK), "D": (1, F(-7, 10), WHITE),
        "E": (1, 2, WHITE), "F": (1, -2, BLACK),
        "A2": (F(33, 10), 0, BLACK), "B2": (4, F(7, 10), WHITE),
        "C2": (F(47, 10), 0, BLACK), "D2": (4, F(-7, 10), WHITE),
        "E2": (4, 2, BLACK), "F2": (4, -2, WHITE),
    }
    edges = [
        ("s1", "F"), ("s2", "A"), ("s3", "E"),
        ("A", "B"), ("B", "C"), ("C", "D"), ("D", "A"), ("B", "E"), ("D", "F"),
        ("E", "E2"), ("F", "F2"), ("C", "A2"),
        ("A2", "B2"), ("B2", "C2"), ("C2", "D2"), ("D2", "A2"), ("B2", "E2"), ("D2", "F2"),
        ("E2", "t3"), ("C2", "t2"), ("F2", "t1"),
    ]
    return PlabicGraph(
        Rect(F(-3, 2), F(13, 2), F(-33, 10), F(33, 10)), verts,
        ["s1", "s2", "s3"], ["t1", "t2", "t3"], edges,
    )


DOUBLE_SQUARE_FACE_POINTS = {
    "top": (F(5, 2), F(11, 4)), "bottom": (F(5, 2), F(-11, 4)),
    "center_left": (F(1), F(0)), "center_right": (F(4), F(0)),
    "upper_left": (F(-1, 2), F(5, 4)), "lower_left": (F(-1, 2), F(-5, 4)),
    "upper_middle": (F(5, 2), F(5, 4)), "lower_middle": (F(5, 2), F(-5, 4)),
    "upper_right": (F(11, 2), F(5, 4)), "lower_right": (F(11, 2), F(-5, 4)),
}


# type A elementary columns -------------------------------------------------

def elementary_column(n: int, i: int, kind: str) -> PlabicGraph:
    """Unit column on wires 1..n with a gadget between rows i and i+1.

    ``kind`` is 'raise' (white below black), 'lower' (black below white) or
    'bottleneck' (both wires pass through one black-white edge, rank drops).
    """
    verts = {}
    for j in range(1, n + 1):
        verts[f"s{j}"] = (0, j, None)
        verts[f"t{j}"] = (1, j, None)
    edges = [(f"s{j}", f"t{j}") for j in range(1, n + 1) if j not in (i, i + 1)]
    if kind in ("raise", "lower"):
        bottom, top = (WHITE, BLACK) if kind == "raise" else (BLACK, WHITE)
        verts["d"] = (F(1, 2), i, bottom)
        verts["u"] = (F(1, 2), i + 1, top)
        edges += [(f"s{i}", "d"), ("d", f"t{i}"), (f"s{i + 1}", "u"), ("u", f"t{i + 1}"), ("d", "u")]
    elif kind == "bottleneck":
        mid = i + F(1, 2)
        verts["b"] = (F(1, 3), mid, BLACK)
        verts["w"] = (F(2, 3), mid, WHITE)
        edges += [(f"s{i}", "b"), (f"s{i + 1}", "b"), ("b", "w"), ("w", f"t{i}"), ("w", f"t{i + 1}")]
    else:
        raise ValueError(f"unknown column kind {kind!r}")
    return PlabicGraph(Rect(F(0), F(1), F(0), F(n + 1)), verts,
                       [f"s{j}" for j in range(1, n + 1)], [f"t{j}" for j in range(1, n + 1)], edges)
