import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from symplabic import cells, linalg, lie, weyl
from symplabic.errors import LengthMismatch, NotReduced, ZeroParameter
from symplabic.measure import meas, meas_faces
from symplabic.moves import is_move_symmetric, midline_squares, ms_coordinates
from symplabic.plabic import FaceWeighting, face_weights_of, identity_graph, isomorphism
from symplabic.scalar import ONE, SQRT2, Scalar

from conftest import positive_scalars

C1, C2, C3 = (lie.GroupContext("C", r) for r in (1, 2, 3))
B1, B2, B3 = (lie.GroupContext("B", r) for r in (1, 2, 3))
ALL = [B1, B2, B3, C1, C2, C3]


@pytest.mark.parametrize("ctx", ALL, ids=lambda c: f"{c.kind}{c.rank}")
def test_each_elementary_graph_measures_its_factor(ctx):
    t = Scalar(Fraction(5, 3))
    for letter in ctx.letters():
        assert meas(cells.psi(ctx, letter, t)) == lie.x_elem(ctx, letter, t)
        assert is_move_symmetric(cells.gamma_graph(ctx, letter))


def test_long_root_bridge_in_c2():
    g = cells.gamma_graph(C2, 2)
    internal = [v for v in g.pos if not g.is_boundary(v)]
    assert sorted(g.pos[v][1] for v in internal) == [2, 3]
    t = Scalar(7)
    assert meas(cells.psi(C2, 2, t)) == linalg.add(linalg.identity(4), linalg.unit(4, 1, 2, t))


def test_short_root_gadget_in_b1():
    g = cells.gamma_graph(B1, 1)
    assert len(midline_squares(g)) == 1
    t = Scalar(3)
    x = meas(cells.psi(B1, 1, t))
    assert x[0][2] == t * t
    weights = set(cells.psi(B1, 1, t).weights)
    assert t / SQRT2 in weights and t * SQRT2 in weights


def test_empty_word():
    assert cells.gamma_word(C2, []).vertex_table() == identity_graph(4).vertex_table()
    h = lie.torus(C2, [Scalar(2), Scalar(3)])
    assert cells.phi(C2, [], h, []) == h
    assert cells.fg_chart(C2, [], [ONE, ONE]) == linalg.identity(4)


def test_explicit_product_in_c2():
    a, b = Scalar(2), Scalar(5)
    got = cells.phi(C2, [1, -1], linalg.identity(4), [a, b])
    # X_1(a) = I + a(E12 + E34), X_-1(b) = its transpose at b
    xa = linalg.add(linalg.identity(4), linalg.add(linalg.unit(4, 0, 1, a), linalg.unit(4, 2, 3, a)))
    xb = linalg.add(linalg.identity(4), linalg.add(linalg.unit(4, 1, 0, b), linalg.unit(4, 3, 2, b)))
    assert got == linalg.matmul(xa, xb)
    assert got[0][0] == 1 + a * b
    assert lie.in_group(C2, got)


def test_explicit_fg_chart_in_c1():
    u, v = Scalar(3), Scalar(Fraction(1, 2))
    assert cells.fg_chart(C1, [1], [u, v]) == [[u * v, u], [Scalar(0), ONE]]


@pytest.mark.parametrize("ctx, dw", [(C2, [1, -2, 2]), (B2, [2, -1, 1]), (B1, [-1, 1]), (C3, [3, -2, 1])],
                         ids=["C2", "B2", "B1", "C3"])
def test_factorization_through_the_network(ctx, dw, rng):
    for middle in ((1, -1) if ctx.kind == "B" else (1,)):
        h = cells.random_torus(ctx, rng, middle=middle)
        ts = [Scalar(rng.randint(1, 9)) for _ in dw]
        a = cells.meas_of_factorization(ctx, dw, h, ts)
        assert a == cells.phi(ctx, dw, h, ts)
        assert lie.in_group(ctx, a)
        if ctx.kind == "B":
            # the determinant picks the component
            assert linalg.det(a) == middle


@settings(max_examples=15)
@given(st.lists(positive_scalars(), min_size=5, max_size=5))
def test_factorization_property_in_c2(values):
    dw = [2, -1, 1]
    h = lie.torus(C2, values[:2])
    assert cells.meas_of_factorization(C2, dw, h, values[2:]) == cells.phi(C2, dw, h, values[2:])


def test_parameter_count_is_length_plus_rank():
    for ctx in (B1, B2, C2):
        for dw in weyl.reduced_double_words(ctx.n, 3):
            assert cells.parameter_count(ctx, dw) == len(dw) + ctx.rank


def test_graph_parameters_are_injective():
    rng = random.Random(11)
    ctx, dw = B2, [1, -2, 2, -1]
    seen = {}
    for _ in range(100):
        h = cells.random_torus(ctx, rng)
        ts = tuple(Scalar(Fraction(rng.randint(1, 9), rng.randint(1, 9))) for _ in dw)
        key = (tuple(h[i][i] for i in range(ctx.rank)), ts)
        fw = face_weights_of(cells.psi_word(ctx, dw, h, list(ts)))
        frozen = tuple(sorted(fw.items()))
        assert seen.setdefault(frozen, key) == key


def test_gadget_geometric_means_are_one():
    g = cells.gamma_graph(B1, 1)
    chart = ms_coordinates(g)
    assert sorted(chart.constants.values()) == [Scalar(1) / 2, ONE, Scalar(2)]
    ones = chart.weighting({n: ONE for n in chart.names})
    assert cells.fg_from_faces(B1, [1], ones) == [ONE, ONE]


def test_all_ones_weighting_gives_all_ones_parameters():
    for ctx, dw in ((C2, [1, -2]), (C3, [3, 2, -3])):
        g = cells.gamma_word(ctx, dw)
        ones = FaceWeighting({f: ONE for f in g.face_ids()}, "full")
        assert cells.fg_from_faces(ctx, dw, ones) == [ONE] * cells.fg_size(ctx, dw)


@pytest.mark.parametrize("ctx, dw", [(C2, [1, -2, 2]), (B1, [1, -1]), (B2, [2, 1, -2])], ids=["C2", "B1", "B2"])
def test_fg_chart_matches_the_graph_projectively(ctx, dw, rng):
    chart = ms_coordinates(cells.gamma_word(ctx, dw))
    for _ in range(3):
        fw = chart.random_weighting(rng, sign=1)
        c, ok = cells.fg_roundtrip(ctx, dw, fw)
        assert ok and c


def test_concatenated_graph_is_a_two_column_graph():
    g = cells.gamma_word(C2, [1, 2])
    assert g.rect.x1 - g.rect.x0 == 2
    left = cells.gamma_graph(C2, 1)
    assert isomorphism(cells.gamma_word(C2, [1]), left) is not None
    assert is_move_symmetric(g)


def test_invalid_inputs():
    with pytest.raises(NotReduced):
        cells.gamma_word(C2, [1, 1])
    with pytest.raises(LengthMismatch):
        cells.phi(C2, [1], linalg.identity(4), [])
    with pytest.raises(ZeroParameter):
        cells.phi(C2, [1], linalg.identity(4), [Scalar(0)])


def test_meas_of_chart_weighting_lies_in_the_group(rng):
    g = cells.gamma_word(B2, [1, 2, -1])
    chart = ms_coordinates(g)
    a = meas_faces(g, chart.random_weighting(rng))
    assert lie.in_group(B2, a)
