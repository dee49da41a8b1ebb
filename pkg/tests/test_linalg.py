from fractions import Fraction
from itertools import permutations

from hypothesis import given, strategies as st

from symplabic import linalg
from symplabic.scalar import ONE, SQRT2, Scalar

from conftest import scalars


def leibniz_det(a):
    """Permutation-expansion determinant, used as an independent oracle."""
    n = len(a)
    total = Scalar(0)
    for p in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = Scalar(-1 if inversions % 2 else 1)
        for i in range(n):
            term = term * a[i][p[i]]
        total = total + term
    return total


def square_matrices(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(scalars(), min_size=n, max_size=n), min_size=n, max_size=n)
    )


@given(square_matrices())
def test_det_matches_leibniz(a):
    assert linalg.det(a) == leibniz_det(a)


@given(square_matrices(3))
def test_inverse_when_invertible(a):
    if linalg.det(a):
        n = len(a)
        assert linalg.equal(linalg.matmul(a, linalg.inverse(a)), linalg.identity(n))
        assert linalg.rank(a) == n
    else:
        assert linalg.rank(a) < len(a)


@given(square_matrices(3), square_matrices(3))
def test_det_is_multiplicative(a, b):
    if len(a) == len(b):
        assert linalg.det(linalg.matmul(a, b)) == linalg.det(a) * linalg.det(b)


def test_rank_of_outer_product():
    u = [Scalar(1), SQRT2, Scalar(Fraction(1, 3))]
    a = [[x * y for y in u] for x in u]
    assert linalg.rank(a) == 1


def test_proportional_reports_the_scalar():
    a = [[ONE, Scalar(2)], [Scalar(0), Scalar(3)]]
    assert linalg.proportional(linalg.scale(a, SQRT2), a) == SQRT2
    assert linalg.proportional(a, linalg.identity(2)) is None


def test_trace_transpose_unit():
    e = linalg.unit(3, 0, 2, Scalar(5))
    assert linalg.trace(linalg.matmul(e, linalg.transpose(e))) == Scalar(25)
    assert linalg.is_diagonal(linalg.diag([1, 2, 3]))
