"""Exact arithmetic in Q(sqrt 2) and a small expression DAG on top of it.

``Scalar`` is an immutable number ``a + b*sqrt(2)`` with rational ``a, b``.
``Expr`` is a hash-consed expression DAG over named variables; it supports
exact evaluation, forward-mode differentiation and randomized identity
testing.
"""
from __future__ import annotations

import math
import random
import re
import weakref
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ConstantNotSquare, DivisionByZero, ParseError, UnboundVariable

_SQRT2 = math.sqrt(2.0)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.replace(" ", ""))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class Scalar:
    """An element ``a + b*sqrt(2)`` of Q(sqrt 2)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        if isinstance(a, Scalar):
            if b:
                raise TypeError("Scalar(Scalar, b) is ambiguous")
            self.a, self.b = a.a, a.b
            return
        self.a = _frac(a)
        self.b = _frac(b)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction) -> "Scalar":
        s = object.__new__(cls)
        s.a = a
        s.b = b
        return s

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar._raw(Fraction(x), Fraction(0))
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Scalar):
            return Scalar._raw(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Scalar):
            return Scalar._raw(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(other - self.a, -self.b)
        return NotImplemented

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Scalar):
            a, b, c, d = self.a, self.b, other.a, other.b
            if not b and not d:
                return Scalar._raw(a * c, b)
            return Scalar._raw(a * c + 2 * b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        a, b = self.a, self.b
        if not b:
            if not a:
                raise DivisionByZero("division by zero in Q(sqrt 2)")
            return Scalar._raw(1 / a, b)
        norm = a * a - 2 * b * b
        return Scalar._raw(a / norm, -b / norm)

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero in Q(sqrt 2)")
            return Scalar._raw(self.a / other, self.b / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparisons ----------------------------------------------------------
    def sign(self) -> int:
        return sign(self)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def _cmp(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            other = Scalar.coerce(other)
        if not isinstance(other, Scalar):
            raise TypeError("cannot compare")
        return sign(self - other)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * _SQRT2

    # misc -----------------------------------------------------------------
    def is_rational(self) -> bool:
        return not self.b

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def sqrt(self) -> "Scalar":
        """Positive square root inside Q(sqrt 2); raises ConstantNotSquare otherwise."""
        r = try_sqrt(self)
        if r is None:
            raise ConstantNotSquare(f"{self} has no square root in Q(sqrt 2)")
        return r

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = Scalar._raw(Fraction(0), Fraction(0))
ONE = Scalar._raw(Fraction(1), Fraction(0))
SQRT2 = Scalar._raw(Fraction(0), Fraction(1))


def sign(s: Scalar) -> int:
    """Exact sign of ``a + b*sqrt(2)``."""
    sa = (s.a > 0) - (s.a < 0)
    sb = (s.b > 0) - (s.b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger magnitude wins, compared via squares
    return sa if s.a * s.a > 2 * s.b * s.b else sb


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def try_sqrt(s: Scalar) -> Scalar | None:
    """Return the nonnegative square root of ``s`` in Q(sqrt 2), or None."""
    if sign(s) < 0:
        return None
    a, b = s.a, s.b
    if not b:
        p = _rational_sqrt(a)
        if p is not None:
            return Scalar._raw(p, Fraction(0))
        q = _rational_sqrt(a / 2)
        if q is not None:
            return Scalar._raw(Fraction(0), q)
        return None
    # (p + q r2)^2 = a + b r2  <=>  p^2 + 2 q^2 = a, 2pq = b
    disc = _rational_sqrt(a * a - 2 * b * b)
    if disc is None:
        return None
    for p2 in ((a + disc) / 2, (a - disc) / 2):
        p = _rational_sqrt(p2)
        if p:
            r = Scalar._raw(p, b / (2 * p))
            if sign(r) < 0:
                r = -r
            if r * r == s:
                return r
    return None


# literals -----------------------------------------------------------------

def _format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Canonical literal: ``a``, ``a/b``, ``a/b + c/d r2`` or ``a/b - c/d r2``."""
    if not s.b:
        return _format_rational(s.a)
    op = "+" if s.b > 0 else "-"
    return f"{_format_rational(s.a)} {op} {_format_rational(abs(s.b))} r2"


_RAT = r"\d+(?:\s*/\s*\d+)?"
_LITERAL = re.compile(
    r"^\s*(?:(?P<a>[+-]?\s*" + _RAT + r")(?!\s*\*?\s*r2))?"
    r"\s*(?:(?P<sign>[+-])?\s*(?P<b>" + _RAT + r")?\s*\*?\s*r2)?\s*$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse a scalar literal such as ``-1/2``, ``3 r2`` or ``1/2 - 3/4 r2``."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string literal, got {text!r}")
    m = _LITERAL.match(text)
    if not m or not text.strip():
        raise ParseError(f"bad scalar literal {text!r}")
    a_txt, sgn, b_txt = m.group("a"), m.group("sign"), m.group("b")
    has_r2 = "r2" in text
    if a_txt is None and not has_r2:
        raise ParseError(f"bad scalar literal {text!r}")
    if a_txt is not None and has_r2 and sgn is None:
        raise ParseError(f"missing sign before r2 term in {text!r}")
    try:
        a = Fraction(a_txt.replace(" ", "")) if a_txt else Fraction(0)
        b = Fraction(0)
        if has_r2:
            b = Fraction(b_txt.replace(" ", "")) if b_txt else Fraction(1)
            if sgn == "-":
                b = -b
    except ZeroDivisionError as exc:
        raise ParseError(f"zero denominator in {text!r}") from exc
    return Scalar._raw(a, b)


# expressions ----------------------------------------------------------------

_TABLE: "weakref.WeakValueDictionary[tuple, Expr]" = weakref.WeakValueDictionary()


class Expr:
    """Node of a hash-consed expression DAG.

    Structurally identical expressions are the same object, so ``is`` and
    ``==`` agree.  Arithmetic with ints, Fractions and Scalars lifts those to
    constants; constant subtrees are folded immediately.
    """

    __slots__ = ("op", "args", "value", "name", "_vars", "__weakref__")

    op: str
    args: tuple
    value: Scalar | None
    name: str | None

    def __new__(cls, *a, **k):
        raise TypeError("use var(), const() or arithmetic to build expressions")

    @staticmethod
    def _intern(key, op, args=(), value=None, name=None) -> "Expr":
        e = _TABLE.get(key)
        if e is None:
            e = object.__new__(Expr)
            e.op = op
            e.args = args
            e.value = value
            e.name = name
            e._vars = None
            _TABLE[key] = e
        return e

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        return _binary("add", self, other)

    def __radd__(self, other):
        return _binary("add", other, self)

    def __sub__(self, other):
        return _binary("sub", self, other)

    def __rsub__(self, other):
        return _binary("sub", other, self)

    def __mul__(self, other):
        return _binary("mul", self, other)

    def __rmul__(self, other):
        return _binary("mul", other, self)

    def __truediv__(self, other):
        return _binary("div", self, other)

    def __rtruediv__(self, other):
        return _binary("div", other, self)

    def __neg__(self):
        if self.op == "const":
            return const(-self.value)
        return Expr._intern(("neg", id(self)), "neg", (self,))

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 1:
            return self
        if k == 0:
            return const(1)
        if self.op == "const":
            return const(self.value ** k)
        return Expr._intern(("pow", id(self), k), "pow", (self, k))

    @property
    def variables(self) -> frozenset:
        if self._vars is None:
            out = set()
            for node in _topo([self]):
                if node.op == "var":
                    out.add(node.name)
            self._vars = frozenset(out)
        return self._vars

    def is_const(self) -> bool:
        return self.op == "const"

    def __repr__(self):
        return f"Expr({self})"

    def __str__(self):
        if self.op == "const":
            return format_scalar(self.value)
        if self.op == "var":
            return self.name
        if self.op == "neg":
            return f"-({self.args[0]})"
        if self.op == "pow":
            return f"({self.args[0]})^{self.args[1]}"
        sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[self.op]
        return f"({self.args[0]} {sym} {self.args[1]})"


def var(name: str) -> Expr:
    return Expr._intern(("var", name), "var", name=name)


def const(x) -> Expr:
    s = Scalar.coerce(x)
    return Expr._intern(("const", s.a, s.b), "const", value=s)


def lift(x) -> Expr:
    """Turn a number or Expr into an Expr."""
    if isinstance(x, Expr):
        return x
    return const(x)


def _binary(op: str, x, y) -> Expr:
    if not isinstance(x, Expr):
        if not isinstance(x, (Scalar, int, Fraction)):
            return NotImplemented
        x = const(x)
    if not isinstance(y, Expr):
        if not isinstance(y, (Scalar, int, Fraction)):
            return NotImplemented
        y = const(y)
    xc, yc = x.op == "const", y.op == "const"
    if xc and yc:
        return const(_apply(op, x.value, y.value))
    if op == "add":
        if xc and not x.value:
            return y
        if yc and not y.value:
            return x
    elif op == "sub":
        if yc and not y.value:
            return x
    elif op == "mul":
        if xc and x.value == 1:
            return y
        if yc and y.value == 1:
            return x
    elif op == "div":
        if yc:
            if not y.value:
                raise DivisionByZero("division by the constant 0")
            if y.value == 1:
                return x
    return Expr._intern((op, id(x), id(y)), op, (x, y))


def _apply(op, u, v):
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "mul":
        return u * v
    if op == "div":
        return u / v
    raise ValueError(op)


def _topo(roots: Iterable[Expr]) -> list:
    """Children-before-parents ordering of all nodes reachable from roots."""
    order = []
    seen = set()
    for root in roots:
        if id(root) in seen:
            continue
        stack = [(root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                order.append(node)
                continue
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.append((node, True))
            if node.op in ("add", "sub", "mul", "div"):
                for child in node.args:
                    if id(child) not in seen:
                        stack.append((child, False))
            elif node.op in ("neg", "pow"):
                child = node.args[0]
                if id(child) not in seen:
                    stack.append((child, False))
    return order


def _lookup(env: Mapping, name: str) -> Scalar:
    try:
        v = env[name]
    except KeyError:
        raise UnboundVariable(f"variable {name!r} is not bound") from None
    return Scalar.coerce(v)


def _inv(x: Scalar) -> Scalar:
    return x.inverse()


def eval_many(exprs: Sequence, env: Mapping) -> list:
    """Evaluate several expressions sharing one memo table."""
    roots = [lift(e) for e in exprs]
    val: dict = {}
    for node in _topo(roots):
        op = node.op
        if op == "const":
            r = node.value
        elif op == "var":
            r = _lookup(env, node.name)
        elif op == "neg":
            r = -val[id(node.args[0])]
        elif op == "pow":
            base, k = val[id(node.args[0])], node.args[1]
            if k < 0 and not base:
                raise DivisionByZero("negative power of zero")
            r = base ** k
        else:
            u, v = val[id(node.args[0])], val[id(node.args[1])]
            if op == "add":
                r = u + v
            elif op == "sub":
                r = u - v
            elif op == "mul":
                r = u * v
            else:
                if not v:
                    raise DivisionByZero("expression hits a pole")
                r = u / v
        val[id(node)] = r
    return [val[id(r)] for r in roots]


def eval(e, env: Mapping) -> Scalar:  # noqa: A001 - mirrors the operation name
    """Exact value of ``e`` at ``env`` (variable name -> Scalar)."""
    if not isinstance(e, Expr):
        return Scalar.coerce(e)
    return eval_many([e], env)[0]


def grad_many(exprs: Sequence, variables: Sequence[str], env: Mapping):
    """Values and gradients of several expressions in one forward pass.

    Returns ``(values, grads)`` where ``grads[r][j]`` is the partial of the
    r-th expression with respect to ``variables[j]``.
    """
    index = {v: j for j, v in enumerate(variables)}
    roots = [lift(e) for e in exprs]
    val: dict = {}
    dot: dict = {}
    for node in _topo(roots):
        op = node.op
        d: dict
        if op == "const":
            r, d = node.value, {}
        elif op == "var":
            r = _lookup(env, node.name)
            j = index.get(node.name)
            d = {} if j is None else {j: ONE}
        elif op == "neg":
            c = id(node.args[0])
            r = -val[c]
            d = {j: -x for j, x in dot[c].items()}
        elif op == "pow":
            c = id(node.args[0])
            base, k = val[c], node.args[1]
            if k < 0 and not base:
                raise DivisionByZero("negative power of zero")
            r = base ** k
            if dot[c]:
                factor = base ** (k - 1) * k
                d = {j: x * factor for j, x in dot[c].items()}
            else:
                d = {}
        else:
            cu, cv = id(node.args[0]), id(node.args[1])
            u, v = val[cu], val[cv]
            du, dv = dot[cu], dot[cv]
            if op == "add":
                r = u + v
                d = dict(du)
                for j, x in dv.items():
                    d[j] = d[j] + x if j in d else x
            elif op == "sub":
                r = u - v
                d = dict(du)
                for j, x in dv.items():
                    d[j] = d[j] - x if j in d else -x
            elif op == "mul":
                r = u * v
                d = {j: x * v for j, x in du.items()}
                for j, x in dv.items():
                    d[j] = d[j] + u * x if j in d else u * x
            else:
                if not v:
                    raise DivisionByZero("expression hits a pole")
                iv = v.inverse()
                r = u * iv
                d = {j: x * iv for j, x in du.items()}
                if dv:
                    coef = r * iv
                    for j, x in dv.items():
                        d[j] = d[j] - coef * x if j in d else -coef * x
        val[id(node)] = r
        dot[id(node)] = d
    values = [val[id(r)] for r in roots]
    grads = []
    for r in roots:
        d = dot[id(r)]
        grads.append([d.get(j, ZERO) for j in range(len(variables))])
    return values, grads


def grad(e, variables: Sequence[str], env: Mapping):
    """Value and gradient of a single expression."""
    values, grads = grad_many([e], variables, env)
    return values[0], grads[0]


def derive(e, v: str, env: Mapping) -> Scalar:
    """Exact partial derivative of ``e`` with respect to ``v`` at ``env``."""
    if not isinstance(e, Expr):
        return ZERO
    return grad(e, [v], env)[1][0]


def random_rational(rng: random.Random, bound: int = 10**6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def probably_equal(e1, e2, trials: int = 20, bound: int = 10**6, seed: int = 0) -> bool:
    """Randomized identity test: compare values at ``trials`` random points.

    Points are rationals with numerators and denominators up to ``bound``.
    Points where either side has a pole are skipped and redrawn.
    """
    e1, e2 = lift(e1), lift(e2)
    names = sorted(e1.variables | e2.variables)
    rng = random.Random(seed)
    done = attempts = 0
    while done < trials:
        attempts += 1
        if attempts > 50 * trials:
            raise DivisionByZero("could not find points off the pole set")
        env = {name: Scalar(random_rational(rng, bound)) for name in names}
        try:
            v1, v2 = eval_many([e1, e2], env)
        except DivisionByZero:
            continue
        if v1 != v2:
            return False
        done += 1
    return True


def eval_float(e, env: Mapping) -> float:
    """Floating-point evaluation (used only by numeric oracles)."""
    if not isinstance(e, Expr):
        return float(e)
    val: dict = {}
    for node in _topo([e]):
        op = node.op
        if op == "const":
            r = float(node.value)
        elif op == "var":
            if node.name not in env:
                raise UnboundVariable(f"variable {node.name!r} is not bound")
            r = float(env[node.name])
        elif op == "neg":
            r = -val[id(node.args[0])]
        elif op == "pow":
            r = val[id(node.args[0])] ** node.args[1]
        else:
            u, v = val[id(node.args[0])], val[id(node.args[1])]
            r = _apply(op, u, v)
        val[id(node)] = r
    return val[id(e)]
