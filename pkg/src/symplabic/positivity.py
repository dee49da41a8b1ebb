"""Total nonnegativity: minor tests, LDU and factorization certificates."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg, lie, weyl
from .errors import (
    ExtractionFailed,
    NotInGroup,
    NotTNN,
    ZeroDenominator,
    ZeroLeadingMinor,
)
from .lie import GroupContext
from .scalar import ZERO, Scalar, sign


def _sub(a: list, rows: Sequence, cols: Sequence) -> list:
    return [[a[r][c] for c in cols] for r in rows]


def minors(a: list):
    """Yield (rows, cols, value) for every square minor."""
    n = len(a)
    m = len(a[0]) if a else 0
    for size in range(1, min(n, m) + 1):
        for rows in combinations(range(n), size):
            for cols in combinations(range(m), size):
                yield rows, cols, linalg.det(_sub(a, rows, cols))


def is_tnn(a: list) -> bool:
    """All minors are nonnegative (exhaustive)."""
    a = linalg.coerce(a)
    return all(sign(v) >= 0 for _r, _c, v in minors(a))


def ldu(a: list):
    """Gaussian decomposition A = L D U with L, U unitriangular."""
    a = linalg.coerce(a)
    n = len(a)
    work = [list(row) for row in a]
    lower = linalg.identity(n)
    for j in range(n):
        pivot = work[j][j]
        if not pivot:
            raise ZeroLeadingMinor(f"leading principal minor {j + 1} vanishes")
        for i in range(j + 1, n):
            f = work[i][j] / pivot
            lower[i][j] = f
            if f:
                for c in range(j, n):
                    work[i][c] = work[i][c] - f * work[j][c]
    d = [work[j][j] for j in range(n)]
    upper = [[work[i][c] / d[i] if c >= i else ZERO for c in range(n)] for i in range(n)]
    return lower, linalg.diag(d), upper


def type_a_x(n: int, j: int, t) -> list:
    """I + t E_{j, j+1} (1-based j)."""
    return linalg.add(linalg.identity(n), linalg.unit(n, j - 1, j, Scalar.coerce(t) if not isinstance(t, Scalar) else t))


def tau_elementary(case: int, params: Sequence) -> tuple:
    """Parameters of tau applied to the type-A products of cases 1-3."""
    params = tuple(Scalar.coerce(p) if not isinstance(p, Scalar) else p for p in params)
    if case == 1:
        t, t1 = params
        return (t1, t)
    if case == 2:
        (t,) = params
        return (t,)
    if case == 3:
        t, t1, t2 = params
        s = t + t2
        if not s:
            raise ZeroDenominator("t + t'' vanishes")
        return (t1 * t2 / s, s, t * t1 / s)
    raise ValueError(f"unknown case {case}")


def case_of(ctx: GroupContext, i: int) -> int:
    if i < ctx.rank:
        return 1
    return 2 if ctx.kind == "C" else 3


def case_product(ctx: GroupContext, i: int, params: Sequence) -> list:
    """Type-A product behind the letter i: x_i x_{n-i}, x_k, or x_k x_{k+1} x_k."""
    n = ctx.n
    parts = weyl.type_a_expand(n, [i])
    mats = [type_a_x(n, j, t) for j, t in zip(parts, params)]
    return linalg.product(mats, n)


# certificates -------------------------------------------------------------

@dataclass
class TNNCertificate:
    """Factors (letter, t) with t > 0 around a positive torus element."""

    ctx: GroupContext
    lower: list = field(default_factory=list)  # [(letter < 0, t)]
    torus: list | None = None
    upper: list = field(default_factory=list)  # [(letter > 0, t)]
    type_a: list = field(default_factory=list)  # [(letter, [type-A params])] for reporting

    def factors(self) -> list:
        return [*self.lower, ("H", self.torus), *self.upper]

    def product(self) -> list:
        ctx = self.ctx
        mats = [lie.x_elem(ctx, a, t) for a, t in self.lower]
        mats.append(self.torus if self.torus is not None else linalg.identity(ctx.n))
        mats += [lie.x_elem(ctx, a, t) for a, t in self.upper]
        return linalg.product(mats, ctx.n)

    def parameters(self) -> list:
        return [t for _a, t in self.lower] + [t for _a, t in self.upper]

    def to_json(self) -> dict:
        from .scalar import format_scalar
        return {
            "type": self.ctx.kind, "rank": self.ctx.rank,
            "lower": [[a, format_scalar(t)] for a, t in self.lower],
            "torus": [format_scalar(self.torus[j][j]) for j in range(self.ctx.n)],
            "upper": [[a, format_scalar(t)] for a, t in self.upper],
        }


def corner_ranks(a: list) -> dict:
    """(i, j) -> rank of rows 1..i, columns j..n (1-based)."""
    n = len(a)
    out = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            out[i, j] = linalg.rank([row[j - 1:] for row in a[:i]])
    return out


def perm_corner_ranks(w: Sequence) -> dict:
    """Corner ranks of the permutation matrix with a 1 at (w(c), c)."""
    n = len(w)
    return {(i, j): sum(1 for c in range(j, n + 1) if w[c - 1] <= i)
            for i in range(1, n + 1) for j in range(1, n + 1)}


def cell_permutation(u: list) -> tuple:
    """The permutation w with u in B w B, read off from corner ranks of u."""
    n = len(u)
    r = corner_ranks(u)

    def rk(i, j):
        if i == 0 or j == n + 1:
            return 0
        return r[i, j]

    w = [0] * n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if rk(i, j) - rk(i - 1, j) - rk(i, j + 1) + rk(i - 1, j + 1) == 1:
                w[j - 1] = i
    if sorted(w) != list(range(1, n + 1)):
        raise ExtractionFailed("corner ranks do not come from a permutation")
    return tuple(w)


def _peel_left(u: list, j: int, target: tuple):
    """Find t with x_j(-t) u in the cell of ``target``; return (t, x_j(-t) u)."""
    n = len(u)
    goal = perm_corner_ranks(target)
    have = corner_ranks(u)
    for col in range(n, 0, -1):
        r = goal[j, col]
        if have[j, col] <= r:
            continue
        for rows in combinations(range(j - 1), r):
            rows_fixed = list(rows)
            for cols in combinations(range(col - 1, n), r + 1):
                m1 = linalg.det(_sub(u, rows_fixed + [j - 1], cols))
                m2 = linalg.det(_sub(u, rows_fixed + [j], cols))
                if m2:
                    t = m1 / m2
                    peeled = linalg.matmul(type_a_x(n, j, -t), u)
                    if corner_ranks(peeled) != goal:
                        raise ExtractionFailed("peeled factor leaves the expected cell")
                    return t, peeled
    raise ExtractionFailed(f"no minor determines the factor x_{j}")


def _factor_upper(ctx: GroupContext, u: list) -> tuple:
    """u = prod X_i(t_i) for upper unitriangular u in the group and TNN."""
    n = ctx.n
    factors, raw = [], []
    current = u
    while not linalg.equal(current, linalg.identity(n)):
        w = cell_permutation(current)
        if not weyl.centralizes_w0(w):
            raise ExtractionFailed("cell permutation does not commute with the longest element")
        i = weyl.reduced_word(w)[0]
        params = []
        for j in weyl.type_a_expand(n, [i]):
            target = weyl.compose(weyl.transposition(n, j, j + 1), w)
            t, current = _peel_left(current, j, target)
            params.append(t)
            w = target
        t = _group(ctx, i, params)
        factors.append((i, t))
        raw.append((i, params))
    return factors, raw


def _group(ctx: GroupContext, i: int, params: list):
    """Parameter of X_i from its type-A parameters, checking the tau-fixed pattern."""
    if any(sign(p) <= 0 for p in params):
        raise NotTNN("factorization parameter is not positive")
    case = case_of(ctx, i)
    if tuple(tau_elementary(case, params)) != tuple(params):
        raise ExtractionFailed(f"parameters {params} of letter {i} are not tau-fixed")
    if case == 1:
        return params[0]
    if case == 2:
        return params[0]
    t, t1, t2 = params
    if t1 != 2 * t or t2 != t:
        raise ExtractionFailed("case 3 parameters do not follow t' = 2t, t'' = t")
    from .scalar import SQRT2
    return SQRT2 * t


def tnn_membership(ctx: GroupContext, a: list) -> TNNCertificate:
    """Factor a TNN element of the group into positive generators and a positive torus element."""
    a = linalg.coerce(a)
    if len(a) != ctx.n or not lie.in_group(ctx, a):
        raise NotInGroup("matrix does not preserve the form")
    if not is_tnn(a):
        raise NotTNN("matrix has a negative minor")
    lower, d, upper = ldu(a)
    if any(sign(d[j][j]) <= 0 for j in range(ctx.n)):
        raise NotTNN("diagonal factor is not positive")
    lie.check_torus(ctx, d)
    up, raw_up = _factor_upper(ctx, upper)
    low_t, raw_low = _factor_upper(ctx, linalg.transpose(lower))
    low = [(-i, t) for i, t in reversed(low_t)]
    raw = [(-i, p) for i, p in reversed(raw_low)] + raw_up
    cert = TNNCertificate(ctx, low, d, up, raw)
    if not linalg.equal(cert.product(), a):
        raise ExtractionFailed("certificate does not reproduce the matrix")
    return cert


def random_certificate(ctx: GroupContext, rng: random.Random, max_factors: int = 6,
                       bound: int = 5) -> TNNCertificate:
    """Random positive certificate whose double word is reduced (type B includes +-k)."""
    n, k = ctx.n, ctx.rank
    letters = ctx.letters()
    for _ in range(1000):
        size = rng.randint(1, max_factors)
        word = [rng.choice(letters) for _ in range(size)]
        if ctx.kind == "B" and k not in map(abs, word):
            word[rng.randrange(size)] = rng.choice([k, -k])
        if not weyl.is_reduced_double(n, word):
            continue
        lower = [(a, Scalar(Fraction(rng.randint(1, bound), rng.randint(1, bound)))) for a in word if a < 0]
        upper = [(a, Scalar(Fraction(rng.randint(1, bound), rng.randint(1, bound)))) for a in word if a > 0]
        xs = [Fraction(rng.randint(1, bound), rng.randint(1, bound)) for _ in range(k)]
        return TNNCertificate(ctx, lower, lie.torus(ctx, xs), upper)
    raise RuntimeError("could not draw a reduced double word")
