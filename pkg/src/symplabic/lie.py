"""Matrix realizations of GL_n, Sp_2k and O_2k+1.

The groups of types B and C are the matrices preserving the antidiagonal
form ``omega(n)``; ``tau`` is the involution whose fixed points they are.
The standard Poisson bracket is evaluated from the r-matrix formula with
trace-form gradients; for B and C the gradients are projected onto the Lie
algebra of the subgroup.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import LetterOutOfRange, NotInTorus, ZeroParameter
from .scalar import ONE, SQRT2, ZERO, Expr, Scalar

KINDS = ("A", "B", "C")


class GroupContext:
    """A group type with its defining representation.

    ``kind`` is 'A' (GL_n, rank n-1), 'B' (O_{2k+1}) or 'C' (Sp_{2k}).
    """

    def __init__(self, kind: str, rank: int):
        if kind not in KINDS:
            raise ValueError(f"unknown group type {kind!r}")
        if rank < 1 and kind != "A":
            raise ValueError("rank must be positive")
        self.kind = kind
        self.rank = rank
        self.n = {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank}[kind]
        self.omega = omega(self.n)
        self.omega_inv = linalg.inverse(self.omega)
        self.d = d_matrix(self.n)
        self.w0 = w0_matrix(self.n)

    @classmethod
    def for_size(cls, n: int, kind: str | None = None) -> "GroupContext":
        """The B or C context of an n x n defining representation (or GL_n with kind='A')."""
        if kind == "A":
            return cls("A", n - 1)
        return cls("B", n // 2) if n % 2 else cls("C", n // 2)

    @property
    def k(self) -> int:
        return self.rank

    def letters(self) -> list:
        return [i for i in range(-self.rank, self.rank + 1) if i]

    def check_letter(self, i: int) -> None:
        if i == 0 or abs(i) > self.rank:
            raise LetterOutOfRange(f"letter {i} is outside [-{self.rank}, {self.rank}]")

    def __eq__(self, other):
        return isinstance(other, GroupContext) and (self.kind, self.rank) == (other.kind, other.rank)

    def __hash__(self):
        return hash((self.kind, self.rank))

    def __repr__(self):
        return f"GroupContext({self.kind}{self.rank}, n={self.n})"


def omega(n: int) -> list:
    """Antidiagonal form with entries (-1)^(i+1) in row i (1-based)."""
    return [[(ONE if i % 2 == 0 else -ONE) if i + j == n - 1 else ZERO for j in range(n)]
            for i in range(n)]


def d_matrix(n: int) -> list:
    return linalg.diag([1 if i % 2 == 0 else -1 for i in range(n)])


def w0_matrix(n: int) -> list:
    return [[ONE if i + j == n - 1 else ZERO for j in range(n)] for i in range(n)]


def tau(ctx: GroupContext, a: list) -> list:
    """Omega A^{-t} Omega^{-1}."""
    inv_t = linalg.transpose(linalg.inverse(a))
    return linalg.matmul(linalg.matmul(ctx.omega, inv_t), ctx.omega_inv)


def in_group(ctx: GroupContext, a: list) -> bool:
    """Exact test A Omega A^t = Omega."""
    lhs = linalg.matmul(linalg.matmul(a, ctx.omega), linalg.transpose(a))
    return linalg.equal(lhs, ctx.omega)


# Chevalley generators ----------------------------------------------------

def chevalley_e(ctx: GroupContext, i: int) -> list:
    """Raising generator E_i, i in [1, rank] (1-based letters)."""
    if i < 1 or i > ctx.rank:
        raise LetterOutOfRange(f"generator index {i} out of range")
    n, k = ctx.n, ctx.rank
    m = linalg.zeros(n)
    if ctx.kind == "A":
        m[i - 1][i] = ONE
    elif ctx.kind == "C":
        m[i - 1][i] = ONE
        if i < k:
            m[n - i - 1][n - i] = ONE
    else:
        if i < k:
            m[i - 1][i] = ONE
            m[n - i - 1][n - i] = ONE
        else:
            m[k - 1][k] = SQRT2
            m[k][k + 1] = SQRT2
    return m


def chevalley_f(ctx: GroupContext, i: int) -> list:
    return linalg.transpose(chevalley_e(ctx, i))


def generator(ctx: GroupContext, letter: int) -> list:
    """E_i for a positive letter, F_|i| for a negative one."""
    ctx.check_letter(letter)
    return chevalley_e(ctx, letter) if letter > 0 else chevalley_f(ctx, -letter)


def nilpotent_exp(x: list) -> list:
    """exp(X) for a nilpotent matrix X (entries Scalar or Expr)."""
    n = len(x)
    out = linalg.identity(n)
    term = linalg.identity(n)
    for m in range(1, n + 1):
        term = linalg.scale(linalg.matmul(term, x), Fraction(1, m))
        if all(isinstance(v, Scalar) and not v for row in term for v in row):
            break
        out = linalg.add(out, term)
    return out


def x_elem(ctx: GroupContext, letter: int, t) -> list:
    """X_i(t) = exp(t E_i) for i > 0 and exp(t F_|i|) for i < 0."""
    if isinstance(t, (int, Fraction)):
        t = Scalar.coerce(t)
    return nilpotent_exp(linalg.scale(generator(ctx, letter), t))


# torus and cocharacters -------------------------------------------------

def coweight(ctx: GroupContext, i: int) -> list:
    """Diagonal of the fundamental coweight H^i."""
    if ctx.kind == "A":
        raise LetterOutOfRange("coweights are provided for types B and C only")
    n, k = ctx.n, ctx.rank
    if i < 1 or i > k:
        raise LetterOutOfRange(f"coweight index {i} out of range")
    diag = [Fraction(0)] * n
    weight = Fraction(1, 2) if (ctx.kind == "C" and i == k) else Fraction(1)
    for j in range(i):
        diag[j] += weight
        diag[n - 1 - j] -= weight
    return diag


def is_half_integral(ctx: GroupContext, i: int) -> bool:
    return any(w.denominator != 1 for w in coweight(ctx, i))


def y_cochar(ctx: GroupContext, i: int, x) -> list:
    """Cocharacter Y_i(t) = exp(H^i log t).

    For an integral coweight ``x`` is t itself.  For the half-integral type C
    coweight H^k, ``x`` is a square root u of t, so that the result stays
    rational: diag(u, ..., u, 1/u, ..., 1/u).
    """
    x = Scalar.coerce(x) if not isinstance(x, (Scalar, Expr)) else x
    if isinstance(x, Scalar) and not x:
        raise ZeroParameter("cocharacter parameter must be nonzero")
    weights = coweight(ctx, i)
    scale = 2 if is_half_integral(ctx, i) else 1
    return [[_power(x, int(weights[a] * scale)) if a == b else ZERO for b in range(ctx.n)]
            for a in range(ctx.n)]


def _power(x, e: int):
    if e == 0:
        return ONE
    return x ** e


def torus(ctx: GroupContext, xs: Sequence, middle=1) -> list:
    """diag(x_1..x_k, [middle], 1/x_k..1/x_1); middle is +-1 in type B."""
    if ctx.kind == "A":
        return linalg.diag([Scalar.coerce(x) for x in xs])
    vals = [Scalar.coerce(x) if not isinstance(x, (Scalar, Expr)) else x for x in xs]
    if len(vals) != ctx.rank:
        raise NotInTorus(f"expected {ctx.rank} torus parameters")
    for v in vals:
        if isinstance(v, Scalar) and not v:
            raise ZeroParameter("torus parameters must be nonzero")
    entries = list(vals)
    if ctx.kind == "B":
        middle = Scalar.coerce(middle)
        if middle not in (ONE, -ONE):
            raise NotInTorus("middle entry of a type B torus element must be +-1")
        entries.append(middle)
    entries += [1 / v for v in reversed(vals)]
    n = ctx.n
    return [[entries[a] if a == b else ZERO for b in range(n)] for a in range(n)]


def check_torus(ctx: GroupContext, h: list) -> None:
    """Raise NotInTorus unless h is a diagonal element of the group."""
    if not linalg.is_diagonal(h):
        raise NotInTorus("torus elements are diagonal")
    if ctx.kind != "A" and not in_group(ctx, h):
        raise NotInTorus("diagonal matrix does not preserve the form")


# standard Poisson bracket --------------------------------------------------

def r_matrix(x: list) -> list:
    """Strictly upper part minus strictly lower part."""
    n = len(x)
    return [[x[i][j] if j > i else (-x[i][j] if j < i else ZERO) for j in range(n)] for i in range(n)]


def pairing(x: list, y: list):
    """Trace form Tr(XY)."""
    n = len(x)
    acc = ZERO
    for i in range(n):
        for j in range(n):
            if x[i][j] and y[j][i]:
                acc = acc + x[i][j] * y[j][i]
    return acc


def project(ctx: GroupContext, x: list) -> list:
    """Trace-orthogonal projection onto the Lie algebra of the group."""
    if ctx.kind == "A":
        return x
    twisted = linalg.matmul(linalg.matmul(ctx.omega, linalg.transpose(x)), ctx.omega_inv)
    return linalg.scale(linalg.sub(x, twisted), Fraction(1, 2))


def bracket_from_gradients(ctx: GroupContext, a: list, grad1: list, grad2: list):
    """Standard bracket of two functions with partial-derivative matrices grad1, grad2 at A.

    ``grad[p][q]`` is the partial derivative with respect to the (p, q) entry.
    """
    d1, d2 = linalg.transpose(grad1), linalg.transpose(grad2)
    left1 = project(ctx, linalg.matmul(d1, a))
    left2 = project(ctx, linalg.matmul(d2, a))
    right1 = project(ctx, linalg.matmul(a, d1))
    right2 = project(ctx, linalg.matmul(a, d2))
    value = pairing(r_matrix(left1), left2) - pairing(r_matrix(right1), right2)
    return value * Fraction(1, 2)


def entry_gradient(n: int, i: int, j: int) -> list:
    return linalg.unit(n, i, j)


def std_bracket(ctx: GroupContext, a: list, first: tuple, second: tuple):
    """{a_ij, a_kl}(A) for 0-based index pairs ``first`` = (i, j), ``second`` = (k, l)."""
    n = ctx.n
    return bracket_from_gradients(ctx, a, entry_gradient(n, *first), entry_gradient(n, *second))


def std_bracket_table(ctx: GroupContext, a: list) -> dict:
    """All brackets {a_ij, a_kl}(A), keyed by ((i, j), (k, l))."""
    n = ctx.n
    d_left = {}
    d_right = {}
    for i in range(n):
        for j in range(n):
            d = linalg.unit(n, j, i)
            d_left[i, j] = project(ctx, linalg.matmul(d, a))
            d_right[i, j] = project(ctx, linalg.matmul(a, d))
    r_left = {key: r_matrix(m) for key, m in d_left.items()}
    r_right = {key: r_matrix(m) for key, m in d_right.items()}
    out = {}
    for p in d_left:
        for q in d_left:
            value = pairing(r_left[p], d_left[q]) - pairing(r_right[p], d_right[q])
            out[p, q] = value * Fraction(1, 2)
    return out


def sklyanin_gl(a: list, first: tuple, second: tuple):
    """Closed form of the standard GL_n bracket on matrix entries.

    {a_ij, a_kl} = 1/2 (sgn(k - i) + sgn(l - j)) a_il a_kj.
    """
    (i, j), (k, l) = first, second

    def sgn(x):
        return (x > 0) - (x < 0)

    c = sgn(k - i) + sgn(l - j)
    return a[i][l] * a[k][j] * Fraction(c, 2) if c else ZERO


def _tau_gradient(ctx: GroupContext, a: list, i: int, j: int) -> list:
    """Partial derivatives of A -> tau(A)_ij at A."""
    n = ctx.n
    inv = linalg.inverse(a)
    inv_t = linalg.transpose(inv)
    grad = linalg.zeros(n)
    for p in range(n):
        for q in range(n):
            # d(A^{-t}) = -A^{-t} dA^t A^{-t}; dA = E_pq
            e_t = linalg.unit(n, q, p)
            d = linalg.scale(linalg.matmul(linalg.matmul(inv_t, e_t), inv_t), -1)
            d = linalg.matmul(linalg.matmul(ctx.omega, d), ctx.omega_inv)
            grad[p][q] = d[i][j]
    return grad


def tau_poisson_check(ctx: GroupContext, a: list, first: tuple, second: tuple) -> tuple:
    """(lhs, rhs) with lhs = {a_ij o tau, a_kl o tau}(A) and rhs = {a_ij, a_kl}(tau(A))."""
    g1 = _tau_gradient(ctx, a, *first)
    g2 = _tau_gradient(ctx, a, *second)
    gl = GroupContext("A", ctx.n - 1)
    lhs = bracket_from_gradients(gl, a, g1, g2)
    rhs = std_bracket(gl, tau(ctx, a), first, second)
    return lhs, rhs


def multiplicativity_check(ctx: GroupContext, a: list, b: list, entries: Sequence) -> bool:
    """Check {f, g}(AB) = {f(.B), g(.B)}(A) + {f(A.), g(A.)}(B) on entry pairs."""
    n = ctx.n
    ab = linalg.matmul(a, b)
    for (i, j), (k, l) in entries:
        lhs = std_bracket(ctx, ab, (i, j), (k, l))
        # f(XB) = sum_s X_is B_sj
        ga1 = [[b[q][j] if p == i else ZERO for q in range(n)] for p in range(n)]
        ga2 = [[b[q][l] if p == k else ZERO for q in range(n)] for p in range(n)]
        # f(AY) = sum_s A_is Y_sj
        gb1 = [[a[i][p] if q == j else ZERO for q in range(n)] for p in range(n)]
        gb2 = [[a[k][p] if q == l else ZERO for q in range(n)] for p in range(n)]
        rhs = bracket_from_gradients(ctx, a, ga1, ga2) + bracket_from_gradients(ctx, b, gb1, gb2)
        if lhs != rhs:
            return False
    return True
