import random

import pytest
from hypothesis import given, strategies as st

from symplabic import linalg, lie
from symplabic.errors import LetterOutOfRange, NotInTorus
from symplabic.scalar import ONE, Scalar, ZERO

from conftest import positive_scalars, scalars

CONTEXTS = [("B", 1), ("B", 2), ("C", 1), ("C", 2), ("C", 3)]


def random_element(ctx, rng, factors=4):
    a = lie.torus(ctx, [Scalar(rng.randint(1, 5)) for _ in range(ctx.rank)])
    for _ in range(factors):
        letter = rng.choice(ctx.letters())
        a = linalg.matmul(a, lie.x_elem(ctx, letter, Scalar(rng.randint(-4, 4), rng.randint(-2, 2))))
    return a


def test_omega_is_skew_exactly_in_even_size():
    for n in range(2, 8):
        om = lie.omega(n)
        skew = linalg.equal(linalg.transpose(om), linalg.scale(om, -1))
        assert skew == (n % 2 == 0)


def test_w0_conjugates_d_up_to_sign():
    for n in range(1, 9):
        lhs = linalg.matmul(linalg.matmul(lie.w0_matrix(n), lie.d_matrix(n)), lie.w0_matrix(n))
        assert linalg.equal(lhs, linalg.scale(lie.d_matrix(n), (-1) ** (n - 1)))


def test_lowering_generators_are_transposes():
    for kind, rank in CONTEXTS:
        ctx = lie.GroupContext(kind, rank)
        for i in range(1, rank + 1):
            assert lie.chevalley_f(ctx, i) == linalg.transpose(lie.chevalley_e(ctx, i))


def test_short_and_long_root_elements():
    t = Scalar(3)
    c2 = lie.GroupContext("C", 2)
    assert lie.x_elem(c2, 2, t) == linalg.add(linalg.identity(4), linalg.unit(4, 1, 2, t))
    b1 = lie.GroupContext("B", 1)
    assert lie.x_elem(b1, 1, t)[0][2] == t * t
    assert lie.x_elem(b1, -1, ZERO) == linalg.identity(3)


@pytest.mark.parametrize("kind, rank", CONTEXTS)
def test_elementary_factors_are_tau_fixed_group_elements(kind, rank):
    ctx = lie.GroupContext(kind, rank)
    for letter in ctx.letters():
        x = lie.x_elem(ctx, letter, Scalar(2, 1))
        assert lie.in_group(ctx, x)
        assert lie.tau(ctx, x) == x


@pytest.mark.parametrize("kind, rank", CONTEXTS)
def test_tau_is_an_involutive_automorphism(kind, rank, rng):
    ctx = lie.GroupContext(kind, rank)
    a, b = random_element(ctx, rng), random_element(ctx, rng)
    assert lie.in_group(ctx, a) and lie.tau(ctx, a) == a
    # off the fixed locus
    a = linalg.matmul(a, linalg.diag([3] + [1] * (ctx.n - 1)))
    assert lie.tau(ctx, a) != a
    assert lie.tau(ctx, lie.tau(ctx, a)) == a
    assert lie.tau(ctx, linalg.matmul(a, b)) == linalg.matmul(lie.tau(ctx, a), lie.tau(ctx, b))


def test_generic_matrix_is_not_in_the_group():
    rng = random.Random(5)
    ctx = lie.GroupContext("C", 2)
    a = [[Scalar(rng.randint(-9, 9)) for _ in range(4)] for _ in range(4)]
    assert not lie.in_group(ctx, a)
    assert lie.in_group(ctx, linalg.identity(4))


def test_cocharacters():
    b2 = lie.GroupContext("B", 2)
    assert linalg.equal(lie.y_cochar(b2, 1, Scalar(4)), linalg.diag([4, 1, 1, 1, Scalar(1) / 4]))
    c2 = lie.GroupContext("C", 2)
    half = Scalar(1) / 2
    assert linalg.equal(lie.y_cochar(c2, 2, Scalar(2)), linalg.diag([2, 2, half, half]))
    assert linalg.equal(lie.y_cochar(c2, 1, ONE), linalg.identity(4))
    assert lie.is_half_integral(c2, 2) and not lie.is_half_integral(b2, 2)


def test_torus_validation():
    b1 = lie.GroupContext("B", 1)
    with pytest.raises(NotInTorus):
        lie.torus(b1, [Scalar(2)], middle=2)
    with pytest.raises(NotInTorus):
        lie.check_torus(b1, linalg.diag([2, 1, 2]))
    with pytest.raises(LetterOutOfRange):
        b1.check_letter(2)


@given(st.lists(scalars(), min_size=4, max_size=4))
def test_standard_bracket_matches_the_closed_form_in_gl2(entries):
    a = [entries[:2], entries[2:]]
    gl = lie.GroupContext("A", 1)
    for first in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        for second in [(0, 0), (0, 1), (1, 0), (1, 1)]:
            assert lie.std_bracket(gl, a, first, second) == lie.sklyanin_gl(a, first, second)


def test_standard_bracket_matches_the_closed_form_in_gl3(rng):
    gl = lie.GroupContext("A", 2)
    a = [[Scalar(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
    table = lie.std_bracket_table(gl, a)
    for (p, q), value in table.items():
        assert value == lie.sklyanin_gl(a, p, q)


def test_bracket_values_at_small_points():
    gl = lie.GroupContext("A", 1)
    ident = linalg.identity(2)
    assert lie.std_bracket(gl, ident, (0, 1), (1, 0)) == 0
    a = [[ONE, ONE], [ZERO, ONE]]
    assert lie.std_bracket(gl, a, (0, 0), (0, 1)) == Scalar(1) / 2


@pytest.mark.parametrize("kind, rank", [("B", 1), ("C", 2)])
def test_tau_is_poisson(kind, rank, rng):
    ctx = lie.GroupContext(kind, rank)
    a = random_element(ctx, rng)
    # tau(A) is defined on all of GL_n; move off the fixed locus
    a = linalg.matmul(a, linalg.diag([2] + [1] * (ctx.n - 1)))
    for first, second in [((0, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (ctx.n - 1, 0))]:
        lhs, rhs = lie.tau_poisson_check(ctx, a, first, second)
        assert lhs == rhs


@given(st.lists(positive_scalars(), min_size=6, max_size=6))
def test_bracket_is_multiplicative_on_tori_and_unipotents(params):
    ctx = lie.GroupContext("C", 2)
    a = linalg.matmul(lie.torus(ctx, params[:2]), lie.x_elem(ctx, 1, params[2]))
    b = linalg.matmul(lie.x_elem(ctx, -2, params[3]), lie.torus(ctx, params[4:]))
    pairs = [((0, 0), (0, 1)), ((1, 2), (2, 1)), ((0, 3), (3, 0))]
    assert lie.multiplicativity_check(ctx, a, b, pairs)
