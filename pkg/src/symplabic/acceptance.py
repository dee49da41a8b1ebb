"""The twelve acceptance checks, shared by ``symplabic verify`` and the test suite.

Each check returns ``(ok, detail)``; ``run`` times it and also enforces the
runtime budget where one is stated.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import cells, fixtures as fx, linalg, lie, positivity, quiver, weyl
from .measure import meas, meas_faces
from .moves import is_square, ms_coordinates, sigma, square_move
from .plabic import (
    FaceWeighting,
    Network,
    concat_networks,
    concat_many,
    face_weights_of,
    identity_graph,
    find_perfect_orientation,
    nondegenerate,
    opposite,
    random_positive,
    random_weighting,
)
from .scalar import ONE, Scalar, eval as eval_expr, probably_equal, sign, var


@dataclass
class Result:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number:2d}. {self.title} ({self.seconds:.2f}s) {self.detail}"


def _rng(seed: int) -> random.Random:
    return random.Random(seed)


# 1 -------------------------------------------------------------------------

def check_cycle_entry():
    net = fx.cycle_network()
    entry = meas(net)[0][0]
    a, b, c, d, e, f, g, h = (var(x) for x in "abcdefgh")
    expected = f * d * b * e * h / (1 + d * b * e * g)
    if not probably_equal(entry, expected, trials=20):
        return False, "symbolic entry differs"
    rng = _rng(1)
    for _ in range(10):
        env = {x: random_positive(rng, 20) for x in "abcdefgh"}
        value = meas(fx.cycle_network(env))[0][0]
        if value != eval_expr(expected, env):
            return False, f"mismatch at {env}"
    return True, "A11 = fdbeh/(1+dbeg)"


# 2 -------------------------------------------------------------------------

def check_face_weights():
    net = fx.cycle_network()
    fw = face_weights_of(net)
    lab = fx.labels(net.graph, fx.CYCLE_FACE_POINTS)
    a, b, c, d, e, f, g, h = (var(x) for x in "abcdefgh")
    expected = {
        "y1": a * b * c, "y2": f * d / a, "y3": 1 / (d * b * e * g),
        "y4": e * h / c, "y5": g / (f * h),
    }
    rng = _rng(2)
    for _ in range(10):
        env = {x: random_positive(rng, 20) for x in "abcdefgh"}
        total = ONE
        for name, expr in expected.items():
            got = eval_expr(fw[lab[name]], env)
            if got != eval_expr(expr, env):
                return False, f"{name} differs"
            total = total * got
        if total != ONE:
            return False, "product is not 1"
    return True, "y1..y5 exact, product 1"


# 3 -------------------------------------------------------------------------

def random_elementary_network(rng: random.Random, n: int) -> Network:
    kind = rng.choice(["raise", "lower", "wires"])
    if kind == "wires":
        g = identity_graph(n)
        return Network(g, [True] * n, [random_positive(rng) for _ in range(n)])
    g = fx.elementary_column(n, rng.randint(1, n - 1), kind)
    orient = find_perfect_orientation(g)
    return Network(g, orient, [random_positive(rng) for _ in g.edges])


def check_concatenation():
    rng = _rng(3)
    for _ in range(50):
        n = rng.randint(2, 5)
        parts = [random_elementary_network(rng, n) for _ in range(rng.randint(2, 4))]
        net = parts[0]
        for p in parts[1:]:
            net = concat_networks(net, p)
        product = linalg.product([meas(p) for p in parts], n)
        if not linalg.equal(meas(net), product):
            return False, "meas of concatenation differs from product"
    return True, "50 concatenations"


# 4 -------------------------------------------------------------------------

def check_square_move():
    # the weight rule holds on the colouring opposite to square_graph under our dart conventions
    g = fx.square_graph()
    lab = fx.labels(g, fx.SQUARE_FACE_POINTS)
    flipped = g.with_colors({v: opposite(c) for v, c in g.color.items()})
    y = {name: var(name) for name in lab}
    fw = FaceWeighting({lab[k]: v for k, v in y.items()}, "full")
    _g2, moved = square_move(flipped, lab["y3"], fw)
    y0 = y["y3"]
    expected = {
        "y1": y["y1"] / (1 + 1 / y0), "y2": y["y2"] * (1 + y0), "y3": 1 / y0,
        "y4": y["y4"] * (1 + y0), "y5": y["y5"] / (1 + 1 / y0),
    }
    for name, expr in expected.items():
        if not probably_equal(moved[lab[name]], expr):
            return False, f"face {name} transforms differently"
    rng = _rng(4)
    graphs = [fx.square_graph(), flipped, fx.orthogonal_square_graph(), fx.ladder_graph(), fx.double_square_graph()]
    for graph in graphs:
        squares = [f.id for f in graph.faces() if is_square(graph, f.id)]
        for _ in range(20):
            w = random_weighting(graph, rng)
            for fid in squares:
                g2, w2 = square_move(graph, fid, w)
                if not linalg.equal(meas_faces(graph, w), meas_faces(g2, w2)):
                    return False, "measurement changed under a square move"
    return True, "move rule and invariance on 5 fixtures"


# 5 -------------------------------------------------------------------------

def check_sigma_is_tau():
    rng = _rng(5)
    for graph in (fx.ladder_graph(), fx.orthogonal_square_graph()):
        ctx = lie.GroupContext.for_size(graph.n)
        for _ in range(20):
            w = random_weighting(graph, rng)
            lhs = meas_faces(graph, sigma(graph, w))
            if not linalg.equal(lhs, lie.tau(ctx, meas_faces(graph, w))):
                return False, "Meas(sigma(Y)) differs from tau(Meas(Y))"
    return True, "40 weightings"


# 6 -------------------------------------------------------------------------

def check_group_membership():
    rng = _rng(6)
    for graph in (fx.ladder_graph(), fx.orthogonal_square_graph()):
        ctx = lie.GroupContext.for_size(graph.n)
        chart = ms_coordinates(graph)
        for _ in range(10):
            a = meas_faces(graph, chart.random_weighting(rng))
            if not lie.in_group(ctx, a):
                return False, "A Omega A^t != Omega"
        for _ in range(5):
            a = meas_faces(graph, chart.random_weighting(rng, sign=1))
            if not lie.in_group(ctx, a) or not positivity.is_tnn(a):
                return False, "positive weighting gives a non-TNN matrix"
    return True, "Sp4 and O3 fixtures"


# 7 -------------------------------------------------------------------------

def check_brackets():
    rng = _rng(7)
    for graph, build in ((fx.ladder_graph(), quiver.folded_bracket),
                         (fx.double_square_graph(), quiver.averaged_bracket)):
        spec = build(graph)
        push = quiver.Pushforward(graph, spec)
        for _ in range(10):
            point = spec.chart.random_point(rng)
            for _pair, lhs, rhs in push.compare(point):
                if lhs != rhs:
                    return False, f"bracket mismatch on {_pair}"
    return True, "folded and averaged, all entry pairs"


# 8 -------------------------------------------------------------------------

def check_weyl_length():
    for n, order in ((4, 8), (5, 8), (6, 48)):
        elements = weyl.group_elements(n)
        if len(elements) != order or elements != weyl.centralizer_by_search(n):
            return False, f"group of order {len(elements)} for n={n}"
        dist = weyl.cayley_distances(n)
        k = n // 2
        for w in elements:
            if weyl.length(w) != dist[w]:
                return False, f"length formula fails at {w}"
            neg = weyl.neg_count(w)
            for word in weyl.all_reduced_words(w):
                if word.count(k) != neg:
                    return False, f"reduced word {word} of {w} has the wrong number of s_k"
    return True, "orders 8, 8, 48"


# 9 and 10 ------------------------------------------------------------------

CELL_CONTEXTS = (("B", 1), ("B", 2), ("C", 2))


def _random_params(rng, count):
    return [Scalar(Fraction(rng.randint(1, 9), rng.randint(1, 9))) for _ in range(count)]


def check_factorization():
    rng = _rng(9)
    total = 0
    for kind, rank in CELL_CONTEXTS:
        ctx = lie.GroupContext(kind, rank)
        for dw in weyl.reduced_double_words(ctx.n, 4):
            for _ in range(5):
                h = lie.torus(ctx, _random_params(rng, rank), rng.choice([1, -1]) if kind == "B" else 1)
                ts = _random_params(rng, len(dw))
                if not linalg.equal(cells.meas_of_factorization(ctx, dw, h, ts), cells.phi(ctx, dw, h, ts)):
                    return False, f"{kind}{rank} word {dw}"
            if cells.parameter_count(ctx, dw) != len(dw) + rank:
                return False, f"parameter count for {kind}{rank} word {dw}"
            total += 1
    return True, f"{total} words"


def check_fg_chart():
    rng = _rng(10)
    total = 0
    for kind, rank in CELL_CONTEXTS:
        ctx = lie.GroupContext(kind, rank)
        for dw in weyl.reduced_double_words(ctx.n, 4):
            chart = ms_coordinates(cells.gamma_word(ctx, dw))
            fw = chart.random_weighting(rng, sign=1)
            c, ok = cells.fg_roundtrip(ctx, dw, fw)
            if not ok:
                return False, f"{kind}{rank} word {dw}"
            total += 1
    return True, f"{total} words"


# 11 ------------------------------------------------------------------------

def check_tnn_roundtrip():
    rng = _rng(11)
    contexts = [lie.GroupContext("C", 2), lie.GroupContext("B", 2), lie.GroupContext("C", 3)]
    for _ in range(100):
        ctx = rng.choice(contexts)
        cert = positivity.random_certificate(ctx, rng)
        a = cert.product()
        got = positivity.tnn_membership(ctx, a)
        if not linalg.equal(got.product(), a):
            return False, "reconstruction differs"
        if any(sign(t) <= 0 for t in got.parameters()):
            return False, "non-positive parameter"
        if ctx.kind == "B":
            short = [p for letter, p in got.type_a if abs(letter) == ctx.rank]
            if not short:
                return False, "B certificate without a short-root factor"
            for t, t1, t2 in short:
                if t1 != 2 * t or t2 != t:
                    return False, "case 3 pattern missing"
    return True, "100 certificates"


# 12 ------------------------------------------------------------------------

def random_column_graph(rng: random.Random):
    n = rng.randint(2, 4)
    kinds = ["raise", "lower", "raise", "lower", "bottleneck"]
    cols, previous = [], None
    for _ in range(rng.randint(1, 4)):
        # two bottlenecks in a row would glue into a doubled edge
        kind = rng.choice(kinds if previous != "bottleneck" else kinds[:4])
        cols.append(fx.elementary_column(n, rng.randint(1, n - 1), kind))
        previous = kind
    return concat_many(cols)


def check_nondegeneracy():
    rng = _rng(12)
    seen = set()
    for _ in range(20):
        g = random_column_graph(rng)
        expected = nondegenerate(g)
        seen.add(expected)
        for _ in range(20):
            det = linalg.det(meas_faces(g, random_weighting(g, rng)))
            if bool(det) != expected:
                return False, "determinant disagrees with nondegenerate()"
    return True, f"20 graphs, outcomes {sorted(seen)}"


# runner ----------------------------------------------------------------------

CRITERIA: list[tuple[int, str, Callable, float | None]] = [
    (1, "network (1,1) entry with a cycle", check_cycle_entry, 1.0),
    (2, "face weights of the cycle network", check_face_weights, None),
    (3, "Meas is multiplicative under concatenation", check_concatenation, 10.0),
    (4, "square move rule and Meas invariance", check_square_move, None),
    (5, "Meas(sigma Y) = Omega Meas(Y)^-t Omega^-1", check_sigma_is_tau, None),
    (6, "move-symmetric weightings land in the group, positive ones are TNN", check_group_membership, 30.0),
    (7, "folded and averaged brackets push forward to the standard bracket", check_brackets, 120.0),
    (8, "Weyl length formula and s_k count", check_weyl_length, 30.0),
    (9, "Meas of the factorization network equals phi", check_factorization, None),
    (10, "Fock-Goncharov chart matches face weights", check_fg_chart, None),
    (11, "TNN certificates round trip", check_tnn_roundtrip, None),
    (12, "nondegenerate agrees with det(Meas) != 0", check_nondegeneracy, None),
]


def run(number: int) -> Result:
    num, title, fn, budget = next(c for c in CRITERIA if c[0] == number)
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, reported as such
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    if ok and budget is not None and seconds > budget:
        ok, detail = False, f"over the {budget:g}s budget"
    return Result(num, title, ok, detail, seconds)


def run_all(echo: Callable[[str], None] | None = print) -> list:
    results = []
    for num, *_ in CRITERIA:
        r = run(num)
        if echo is not None:
            echo(r.line())
        results.append(r)
    return results
