"""The type B/C Weyl group as the centralizer of the longest permutation.

Permutations are tuples ``w`` of the values w(1), ..., w(n) (1-based
values, 0-based positions).  Products compose right to left:
``compose(u, v)(i) = u(v(i))``.
"""
from __future__ import annotations

from collections import deque
from itertools import permutations
from typing import Sequence

from .errors import LetterOutOfRange, NotCentralizing, NotReduced, ParseError


def identity(n: int) -> tuple:
    return tuple(range(1, n + 1))


def compose(u: Sequence, v: Sequence) -> tuple:
    return tuple(u[x - 1] for x in v)


def inverse(w: Sequence) -> tuple:
    out = [0] * len(w)
    for i, x in enumerate(w, 1):
        out[x - 1] = i
    return tuple(out)


def transposition(n: int, a: int, b: int) -> tuple:
    w = list(range(1, n + 1))
    w[a - 1], w[b - 1] = b, a
    return tuple(w)


def centralizes_w0(w: Sequence) -> bool:
    n = len(w)
    return all(w[n - i] == n + 1 - w[i - 1] for i in range(1, n + 1))


def _check(w: Sequence) -> tuple:
    w = tuple(w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise NotCentralizing("not a permutation")
    if not centralizes_w0(w):
        raise NotCentralizing("permutation does not commute with the longest element")
    return w


def rank_of(n: int) -> int:
    return n // 2


def gens(n: int) -> list:
    """The generators s_1, ..., s_k of the centralizer in S_n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    k = n // 2
    out = []
    for i in range(1, k):
        out.append(compose(transposition(n, i, i + 1), transposition(n, n - i, n - i + 1)))
    out.append(transposition(n, k, k + 1) if n % 2 == 0 else transposition(n, k, k + 2))
    return out


def gen(n: int, i: int) -> tuple:
    k = n // 2
    if i < 1 or i > k:
        raise LetterOutOfRange(f"generator index {i} out of range for n={n}")
    return gens(n)[i - 1]


def inv_count(w: Sequence) -> int:
    w = _check(w)
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def neg_count(w: Sequence) -> int:
    w = _check(w)
    n = len(w)
    half = (n + 1) / 2
    return sum(1 for i in range(1, n + 1) if i < half and w[i - 1] > half)


def length(w: Sequence) -> int:
    w = _check(w)
    n = len(w)
    total = inv_count(w) + (-1) ** n * neg_count(w)
    return total // 2


def word_product(n: int, word: Sequence) -> tuple:
    """s_{i1} s_{i2} ... s_{im}."""
    out = identity(n)
    g = gens(n)
    for i in word:
        if i < 1 or i > len(g):
            raise LetterOutOfRange(f"generator index {i} out of range for n={n}")
        out = compose(out, g[i - 1])
    return out


def is_right_descent(w: Sequence, i: int) -> bool:
    """True when l(w s_i) < l(w)."""
    n = len(w)
    k = n // 2
    if i < k:
        return w[i - 1] > w[i]
    if n % 2 == 0:
        return w[k - 1] > w[k]
    return w[k - 1] > w[k + 1]


def reduced_word(w: Sequence) -> list:
    """A reduced word for w, found by stripping right descents (smallest index first)."""
    w = _check(w)
    n = len(w)
    k = n // 2
    g = gens(n)
    word = []
    while w != identity(n):
        i = next(i for i in range(1, k + 1) if is_right_descent(w, i))
        word.append(i)
        w = compose(w, g[i - 1])
    word.reverse()
    return word


def group_elements(n: int) -> list:
    """All elements of the centralizer, by closure under the generators."""
    start = identity(n)
    seen = {start}
    queue = deque([start])
    g = gens(n)
    while queue:
        w = queue.popleft()
        for s in g:
            x = compose(w, s)
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return sorted(seen)


def centralizer_by_search(n: int) -> list:
    """All permutations commuting with the longest element (brute force)."""
    return sorted(p for p in permutations(range(1, n + 1)) if centralizes_w0(p))


def cayley_distances(n: int) -> dict:
    """Breadth-first distance from the identity in the Cayley graph."""
    start = identity(n)
    dist = {start: 0}
    queue = deque([start])
    g = gens(n)
    while queue:
        w = queue.popleft()
        for s in g:
            x = compose(w, s)
            if x not in dist:
                dist[x] = dist[w] + 1
                queue.append(x)
    return dist


def all_reduced_words(w: Sequence) -> list:
    """Every reduced word of w (exponential; for small n)."""
    w = _check(w)
    n = len(w)
    g = gens(n)
    dist = cayley_distances(n)
    out = []

    def rec(x, suffix):
        if dist[x] == 0:
            out.append(list(suffix))
            return
        for i, s in enumerate(g, 1):
            y = compose(x, s)
            if dist[y] == dist[x] - 1:
                rec(y, [i] + suffix)

    rec(w, [])
    return out


def _integers(text: str, what: str) -> list:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"{what} must be whitespace-separated integers: {text!r}") from None


def parse_perm(text: str) -> tuple:
    w = tuple(_integers(text, "permutation"))
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ParseError(f"{text!r} is not a permutation of 1..{len(w)}")
    return w


# double words -------------------------------------------------------------

def parse_word(text: str) -> list:
    return _integers(text, "word")


def format_word(word: Sequence) -> str:
    return " ".join(str(i) for i in word)


def word_to_pair(n: int, dw: Sequence) -> tuple:
    """(u, v): u from the negative letters, v from the positive ones."""
    k = n // 2
    for i in dw:
        if i == 0 or abs(i) > k:
            raise LetterOutOfRange(f"letter {i} out of range for n={n}")
    u = word_product(n, [-i for i in dw if i < 0])
    v = word_product(n, [i for i in dw if i > 0])
    return u, v


def is_reduced_double(n: int, dw: Sequence) -> bool:
    u, v = word_to_pair(n, dw)
    negs = sum(1 for i in dw if i < 0)
    return length(u) == negs and length(v) == len(dw) - negs


def reduced_double_words(n: int, max_length: int) -> list:
    """All reduced double words of length at most max_length."""
    k = n // 2
    letters = [i for i in range(-k, k + 1) if i]
    out = [[]]
    frontier = [[]]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for a in letters:
                cand = w + [a]
                if is_reduced_double(n, cand):
                    nxt.append(cand)
        out.extend(nxt)
        frontier = nxt
    return out


def type_a_expand(n: int, dw: Sequence) -> list:
    """Replace each letter by its reduced expression in adjacent transpositions (signs kept)."""
    if not is_reduced_double(n, dw):
        raise NotReduced("double word is not reduced")
    k = n // 2
    out = []
    for letter in dw:
        i, sgn = abs(letter), (1 if letter > 0 else -1)
        if i < k:
            parts = [i, n - i]
        elif n % 2 == 0:
            parts = [k]
        else:
            parts = [k, k + 1, k]
        out.extend(sgn * p for p in parts)
    return out


def type_a_inversions(n: int, word: Sequence) -> int:
    """Inversions of the product of adjacent transpositions (i, i+1)."""
    w = identity(n)
    for i in word:
        w = compose(w, transposition(n, i, i + 1))
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])
