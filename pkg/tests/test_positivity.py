import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from symplabic import fixtures as fx, linalg, lie, positivity, weyl
from symplabic.errors import NotInGroup, NotTNN, ZeroDenominator, ZeroLeadingMinor
from symplabic.measure import meas_faces
from symplabic.moves import ms_coordinates
from symplabic.scalar import ONE, SQRT2, Scalar

from conftest import positive_scalars

C2, C3 = lie.GroupContext("C", 2), lie.GroupContext("C", 3)
B1, B2 = lie.GroupContext("B", 1), lie.GroupContext("B", 2)


def test_minor_test_examples():
    assert positivity.is_tnn(linalg.identity(3))
    assert positivity.is_tnn(lie.x_elem(C2, 1, ONE))
    assert not positivity.is_tnn([[1, 2], [3, 1]])
    assert not positivity.is_tnn(lie.x_elem(C2, 1, -ONE))


def test_minor_count():
    # sum over sizes of C(3, s)^2
    assert len(list(positivity.minors(linalg.identity(3)))) == 9 + 9 + 1


@given(st.lists(positive_scalars(), min_size=4, max_size=4))
def test_ldu_of_positive_products(params):
    a = linalg.product([
        lie.x_elem(C2, -1, params[0]), lie.torus(C2, params[1:3]), lie.x_elem(C2, 2, params[3]),
    ], 4)
    lower, d, upper = positivity.ldu(a)
    assert linalg.matmul(linalg.matmul(lower, d), upper) == a
    for m in (lower, d, upper):
        assert positivity.is_tnn(m)
        assert lie.in_group(C2, m)


def test_ldu_examples():
    lower, d, upper = positivity.ldu(linalg.diag([2, 3]))
    assert (lower, d, upper) == (linalg.identity(2), linalg.diag([2, 3]), linalg.identity(2))
    with pytest.raises(ZeroLeadingMinor):
        positivity.ldu([[0, 1], [1, 0]])


def test_case_three_fixed_point():
    assert positivity.tau_elementary(3, [1, 2, 1]) == (ONE, Scalar(2), ONE)
    assert positivity.tau_elementary(1, [5, 5]) == (Scalar(5), Scalar(5))
    with pytest.raises(ZeroDenominator):
        positivity.tau_elementary(3, [1, 1, -1])


@given(st.lists(positive_scalars(), min_size=3, max_size=3))
def test_case_three_is_an_involution(params):
    once = positivity.tau_elementary(3, params)
    assert positivity.tau_elementary(3, once) == tuple(params)


@pytest.mark.parametrize("ctx, letter, size", [(C2, 1, 2), (C2, 2, 1), (C3, 2, 2), (B1, 1, 3), (B2, 2, 3)],
                         ids=["C2-1", "C2-2", "C3-2", "B1-1", "B2-2"])
def test_tau_acts_on_type_a_products_by_the_case_rule(ctx, letter, size):
    rng = random.Random(letter * 10 + size)
    case = positivity.case_of(ctx, letter)
    for _ in range(20):
        params = [Scalar(Fraction(rng.randint(1, 9), rng.randint(1, 9))) for _ in range(size)]
        lhs = lie.tau(ctx, positivity.case_product(ctx, letter, params))
        rhs = positivity.case_product(ctx, letter, positivity.tau_elementary(case, params))
        assert lhs == rhs


def test_short_root_factor_expands_with_doubled_middle():
    # X_k(t) = x_k(s) x_{k+1}(2s) x_k(s) with s = t / sqrt 2
    t = Scalar(3)
    s = t / SQRT2
    assert lie.x_elem(B1, 1, t) == positivity.case_product(B1, 1, [s, 2 * s, s])


def test_membership_of_a_two_factor_product():
    a, b = Scalar(2), Scalar(Fraction(1, 3))
    cert = positivity.tnn_membership(C2, linalg.matmul(lie.x_elem(C2, 1, a), lie.x_elem(C2, 2, b)))
    assert cert.upper == [(1, a), (2, b)]
    assert cert.lower == []
    assert cert.torus == linalg.identity(4)


def test_membership_of_the_identity():
    cert = positivity.tnn_membership(C3, linalg.identity(6))
    assert cert.lower == cert.upper == []
    assert cert.torus == linalg.identity(6)


def test_membership_of_a_short_root_factor():
    t = Scalar(5)
    cert = positivity.tnn_membership(B1, lie.x_elem(B1, 1, t))
    assert cert.upper == [(1, t)]
    letter, params = cert.type_a[0]
    s = params[0]
    assert letter == 1 and list(params) == [s, 2 * s, s] and s * SQRT2 == t


def test_membership_errors():
    with pytest.raises(NotInGroup):
        positivity.tnn_membership(C2, linalg.diag([1, 2, 3, 4]))
    with pytest.raises(NotTNN):
        positivity.tnn_membership(C2, lie.x_elem(C2, 1, -ONE))


def _word(cert):
    return [letter for letter, _t in [*cert.lower, *cert.upper]]


@pytest.mark.parametrize("ctx", [C2, B2, C3], ids=["C2", "B2", "C3"])
def test_random_certificates_are_recovered(ctx):
    rng = random.Random(ctx.n)
    for _ in range(15):
        cert = positivity.random_certificate(ctx, rng)
        a = cert.product()
        got = positivity.tnn_membership(ctx, a)
        assert got.product() == a
        assert all(t > 0 for t in got.parameters())
        for letter, t in [*got.lower, *got.upper]:
            assert lie.in_group(ctx, lie.x_elem(ctx, letter, t))
        # factors are not unique, but the cell they describe is
        assert weyl.word_to_pair(ctx.n, _word(got)) == weyl.word_to_pair(ctx.n, _word(cert))
        assert len(_word(got)) == len(_word(cert))


@pytest.mark.parametrize("name", ["ladder_graph", "orthogonal_square_graph", "double_square_graph"])
def test_positive_symmetric_weightings_are_certified(name, rng):
    g = getattr(fx, name)()
    ctx = lie.GroupContext.for_size(g.n)
    chart = ms_coordinates(g)
    for _ in range(3):
        a = meas_faces(g, chart.random_weighting(rng, sign=1))
        assert positivity.is_tnn(a)
        assert positivity.tnn_membership(ctx, a).product() == a


def test_certificate_json():
    cert = positivity.tnn_membership(B1, lie.x_elem(B1, 1, ONE))
    assert cert.to_json() == {"type": "B", "rank": 1, "lower": [], "torus": ["1", "1", "1"], "upper": [[1, "1"]]}
