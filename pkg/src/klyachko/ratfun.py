"""Rational functions whose denominators are products of ``(1 - monomial)`` factors.

Every denominator met in the q-major index machinery has this shape, so a
:class:`RatFun` stores a Laurent polynomial numerator together with a
multiset of exponent vectors ``m`` standing for ``(1 - q^m)``.  Each ``m`` is
kept lexicographically positive; the unit produced by flipping a factor is
moved into the numerator.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import gmpy2

from .ring import (
    Exponents,
    IncompatibleModeError,
    Polynomial,
    PoleError,
    RingMode,
    apply_permutation,
    canonicalize_exponents,
    check_point,
    div_one_minus,
    evaluate_mpq,
    gradlex_key,
    is_lex_positive,
    monomial_value,
    permute_exponents,
    render_monomial,
    render_polynomial,
    to_fraction,
)

Denominator = Tuple[Tuple[Exponents, int], ...]


class ZeroDenominatorError(ZeroDivisionError):
    """A denominator factor ``1 - q^m`` with ``q^m == 1``."""


class DegeneratePointError(RuntimeError):
    """No admissible random evaluation point was found."""


def _normalize(num: Polynomial, factors: Iterable[Tuple[Sequence[int], int]]):
    """Canonicalize factor exponents and flip lex-negative ones into the numerator."""
    mode = num.mode
    den: Dict[Exponents, int] = {}
    for m, k in factors:
        if k == 0:
            continue
        m = canonicalize_exponents(tuple(m), mode)
        if not any(m):
            raise ZeroDenominatorError(f"denominator factor 1 - {render_monomial(m, mode.var) or '1'} vanishes")
        if not is_lex_positive(m):
            # 1 - q^m = -q^m (1 - q^-m)
            m = tuple(-x for x in m)
            num = num.shift(tuple(k * x for x in m), (-1) ** k)
        den[m] = den.get(m, 0) + k
    return num, den


def _cancel(num: Polynomial, den: Dict[Exponents, int]):
    if num.is_zero():
        return num, {}
    for m in list(den):
        while den[m]:
            q = div_one_minus(num, m)
            if q is None:
                break
            num = q
            den[m] -= 1
        if not den[m]:
            del den[m]
    return num, den


def _freeze(den: Dict[Exponents, int]) -> Denominator:
    return tuple(sorted(((m, k) for m, k in den.items() if k), key=lambda t: gradlex_key(t[0])))


class RatFun:
    """``num / prod (1 - q^m)^k``; immutable."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Denominator = ()):
        self.num = num
        self.den = den

    @classmethod
    def make(cls, num: Polynomial, factors: Iterable = (), cancel: bool = True) -> "RatFun":
        """Build ``num / prod (1 - q^m)`` over the exponent vectors in ``factors``.

        ``factors`` may hold bare exponent vectors or ``(vector, multiplicity)`` pairs.
        """
        pairs = []
        for f in factors:
            if len(f) == 2 and isinstance(f[1], int) and isinstance(f[0], (tuple, list)):
                pairs.append((tuple(f[0]), f[1]))
            else:
                pairs.append((tuple(f), 1))
        num, den = _normalize(num, pairs)
        if num.is_zero():
            return cls(num, ())
        if cancel:
            num, den = _cancel(num, den)
        return cls(num, _freeze(den))

    @classmethod
    def zero(cls, mode: RingMode) -> "RatFun":
        return cls(Polynomial.zero(mode))

    @classmethod
    def one(cls, mode: RingMode) -> "RatFun":
        return cls(Polynomial.one(mode))

    @classmethod
    def constant(cls, mode: RingMode, c) -> "RatFun":
        return cls(Polynomial.constant(mode, c))

    @property
    def mode(self) -> RingMode:
        return self.num.mode

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def den_counter(self) -> Dict[Exponents, int]:
        return dict(self.den)

    def den_polynomial(self) -> Polynomial:
        p = Polynomial.one(self.mode)
        for m, k in self.den:
            for _ in range(k):
                p = p.mul_one_minus(m)
        return p

    # arithmetic

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            if other.mode != self.mode:
                raise IncompatibleModeError(f"{self.mode} vs {other.mode}")
            return other
        if isinstance(other, Polynomial):
            if other.mode != self.mode:
                raise IncompatibleModeError(f"{self.mode} vs {other.mode}")
            return RatFun(other)
        if isinstance(other, (int, Fraction)):
            return RatFun.constant(self.mode, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return rf_sum((self, other))

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return rf_sum((self, -other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFun(self.num * other, self.den) if other else RatFun.zero(self.mode)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        num = self.num * other.num
        if num.is_zero():
            return RatFun.zero(self.mode)
        den = dict(self.den)
        for m, k in other.den:
            den[m] = den.get(m, 0) + k
        num, den = _cancel(num, den)
        return RatFun(num, _freeze(den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        """Inverse, available when the numerator is a monomial or ``c q^a (1 - q^m)``."""
        num = self.num
        if num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        inv_den = self.den_polynomial()
        if num.is_monomial():
            (e, c), = num.terms.items()
            return RatFun.make(inv_den.shift(tuple(-x for x in e), Fraction(1) / c))
        if len(num) == 2:
            (e1, c1), (e2, c2) = sorted(num.terms.items(), key=lambda t: gradlex_key(t[0]))
            if c1 == -c2:
                m = tuple(y - x for x, y in zip(e1, e2))
                return RatFun.make(inv_den.shift(tuple(-x for x in e1), Fraction(1) / c1), [m])
        raise ValueError(f"cannot invert numerator {num}")

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFun.one(self.mode)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (RatFun, Polynomial, int, Fraction)):
            other = self._coerce(other)
            return rf_equal(self, other)
        return NotImplemented

    __hash__ = None

    def apply(self, sigma: Sequence[int]) -> "RatFun":
        return rf_apply_permutation(self, sigma)

    def to_mode(self, mode: RingMode) -> "RatFun":
        """Reinterpret in a ring with the same variable count (e.g. free to cyclic)."""
        return RatFun.make(self.num.to_mode(mode), list(self.den))

    def evaluate(self, point) -> Fraction:
        return to_fraction(evaluate_ratfun_mpq(self, check_point(point, self.mode)))

    def __str__(self):
        return render_ratfun(self)

    def __repr__(self):
        return f"RatFun({self})"


def rf_make(num: Polynomial, factors: Iterable = ()) -> RatFun:
    return RatFun.make(num, factors)


def _lcm(dens: Iterable[Denominator]) -> Dict[Exponents, int]:
    lcm: Dict[Exponents, int] = {}
    for den in dens:
        for m, k in den:
            if k > lcm.get(m, 0):
                lcm[m] = k
    return lcm


def _lift(f: RatFun, lcm: Dict[Exponents, int]) -> Polynomial:
    """Numerator of ``f`` over the common denominator ``lcm``."""
    have = dict(f.den)
    num = f.num
    for m, k in lcm.items():
        for _ in range(k - have.get(m, 0)):
            num = num.mul_one_minus(m)
    return num


def rf_sum(items: Iterable[RatFun], mode: Optional[RingMode] = None, cancel: bool = True) -> RatFun:
    """Sum over the multiset LCM of the denominators.

    ``mode`` is only needed when every term may be zero.
    """
    items = list(items)
    if not items and mode is None:
        raise ValueError("empty sum needs an explicit mode")
    mode = mode or items[0].mode
    items = [f for f in items if not f.is_zero()]
    if not items:
        return RatFun.zero(mode)
    if len(items) == 1:
        return items[0]
    for f in items:
        if f.mode != mode:
            raise IncompatibleModeError(f"{mode} vs {f.mode}")
    lcm = _lcm(f.den for f in items)
    terms: Dict[Exponents, object] = {}
    for f in items:
        for e, c in _lift(f, lcm).terms.items():
            terms[e] = terms.get(e, 0) + c
    num = Polynomial(mode, terms)
    if num.is_zero():
        return RatFun.zero(mode)
    if cancel:
        num, lcm = _cancel(num, lcm)
    return RatFun(num, _freeze(lcm))


def rf_arith(a: RatFun, b: RatFun, op: str) -> RatFun:
    if a.mode != b.mode:
        raise IncompatibleModeError(f"{a.mode} vs {b.mode}")
    if op == "add":
        return a + b
    if op == "multiply":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def rf_equal(a: RatFun, b: RatFun) -> bool:
    """Field equality by cross-multiplication over the common denominator."""
    if a.mode != b.mode:
        raise IncompatibleModeError(f"{a.mode} vs {b.mode}")
    if a.den == b.den:
        return a.num == b.num
    lcm = _lcm((a.den, b.den))
    return _lift(a, lcm) == _lift(b, lcm)


def rf_apply_permutation(f: RatFun, sigma: Sequence[int]) -> RatFun:
    """Permute variables in numerator and every denominator factor."""
    num = apply_permutation(f.num, sigma)
    if not f.den:
        return RatFun(num)
    num, den = _normalize(num, [(permute_exponents(m, sigma), k) for m, k in f.den])
    return RatFun(num, _freeze(den))


# evaluation


def evaluate_ratfun_mpq(f: RatFun, pt, cache: Optional[dict] = None):
    value = evaluate_mpq(f.num, pt, cache)
    if not f.den or value == 0:
        return value
    d = gmpy2.mpq(1)
    for m, k in f.den:
        x = 1 - monomial_value(m, pt, cache)
        if x == 0:
            raise PoleError(f"denominator factor (1 - {render_monomial(m, f.mode.var)}) vanishes")
        d *= x if k == 1 else x ** k
    return value / d


def random_cyclic_point(n: int, rng: random.Random, bound: int = 10**6):
    """Distinct random rationals ``a/b`` (``2 <= a, b <= bound``) with product 1."""
    coords: List = []
    seen = {gmpy2.mpq(1)}
    while len(coords) < n - 1:
        x = gmpy2.mpq(rng.randint(2, bound), rng.randint(2, bound))
        if x in seen:
            continue
        seen.add(x)
        coords.append(x)
    prod = gmpy2.mpq(1)
    for x in coords:
        prod *= x
    coords.append(1 / prod)
    return tuple(coords)


def rf_random_evaluate(f: RatFun, seed: int, retries: int = 32) -> Fraction:
    """Exact value of ``f`` at a seeded random point satisfying the cyclic relation."""
    if not f.mode.cyclic:
        raise ValueError("random evaluation needs a cyclic-mode rational function")
    rng = random.Random(seed)
    for _ in range(retries):
        pt = random_cyclic_point(f.mode.n, rng)
        try:
            return to_fraction(evaluate_ratfun_mpq(f, pt))
        except PoleError:
            continue
    raise DegeneratePointError(f"no admissible point after {retries} draws")


# rendering and parsing


def render_ratfun(f: RatFun) -> str:
    num = render_polynomial(f.num)
    if not f.den:
        return num
    if len(f.num) > 1:
        num = f"({num})"
    factors = []
    for m, k in f.den:
        s = f"(1 - {render_monomial(m, f.mode.var)})"
        factors.append(s if k == 1 else f"{s}^{k}")
    den = factors[0] if len(factors) == 1 else "(" + "*".join(factors) + ")"
    return f"{num} / {den}"


_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z]+)(\d+)|(\^)|(\*)|(/)|(\+)|(-)|(\()|(\)))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected input at {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group(1):
            out.append(("num", int(m.group(1))))
        elif m.group(2):
            out.append(("var", (m.group(2), int(m.group(3)))))
        else:
            out.append(("op", m.group(0).strip()))
    return out


class _Parser:
    """Recursive descent over + - * / ^ and parentheses, producing a small AST."""

    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if value is not None and tok != ("op", value):
            raise ValueError(f"expected {value!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        node = None
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        node = ("neg", self.term()) if sign < 0 else self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            node = ("add", node, rhs if op == "+" else ("neg", rhs))
        return node

    def term(self):
        node = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.power()
            node = ("mul", node, rhs) if op == "*" else ("div", node, rhs)
        return node

    def power(self):
        node = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, k = self.take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            node = ("pow", node, sign * k)
        return node

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            if self.peek() == ("op", "/") and self.i + 1 < len(self.toks) and self.toks[self.i + 1][0] == "num":
                # p/q literal
                self.take()
                return ("const", Fraction(val, self.take()[1]))
            return ("const", val)
        if kind == "var":
            return ("var", val)
        if val == "(":
            node = self.expr()
            self.take(")")
            return node
        raise ValueError(f"unexpected token {val!r}")


def _eval(node, mode: RingMode) -> RatFun:
    tag = node[0]
    if tag == "const":
        return RatFun.constant(mode, node[1])
    if tag == "var":
        name, i = node[1]
        if name != mode.var or not 1 <= i <= mode.n:
            raise ValueError(f"unknown variable {name}{i}")
        return RatFun(Polynomial.variable(mode, i))
    if tag == "neg":
        return -_eval(node[1], mode)
    if tag == "add":
        return _eval(node[1], mode) + _eval(node[2], mode)
    if tag == "mul":
        return _eval(node[1], mode) * _eval(node[2], mode)
    if tag == "div":
        return _eval(node[1], mode) * _eval_inverse(node[2], mode)
    if tag == "pow":
        base, k = node[1], node[2]
        return _eval_inverse(base, mode) ** (-k) if k < 0 else _eval(base, mode) ** k
    raise AssertionError(tag)


def _eval_inverse(node, mode: RingMode) -> RatFun:
    # distribute the inverse over products so only binomials are ever inverted
    tag = node[0]
    if tag == "mul":
        return _eval_inverse(node[1], mode) * _eval_inverse(node[2], mode)
    if tag == "div":
        return _eval_inverse(node[1], mode) * _eval(node[2], mode)
    if tag == "pow":
        return _eval_inverse(node[1], mode) ** node[2] if node[2] >= 0 else _eval(node[1], mode) ** (-node[2])
    return _eval(node, mode).inverse()


def parse_ratfun(text: str, mode: RingMode) -> RatFun:
    """Parse the output of :func:`render_ratfun` (and similar hand-written input)."""
    p = _Parser(_tokenize(text))
    node = p.expr()
    if p.i != len(p.toks):
        raise ValueError(f"trailing input in {text!r}")
    return _eval(node, mode)


class BatchEvaluator:
    """Evaluate many rational functions at a point, computing each distinct monomial once."""

    def __init__(self, funs: Iterable[RatFun]):
        index: Dict[Exponents, int] = {}

        def slot(e):
            if e not in index:
                index[e] = len(index)
            return index[e]

        self.plan = []
        for f in funs:
            num = [(slot(e), c if type(c) is int else gmpy2.mpq(c)) for e, c in f.num.terms.items()]
            den = [(slot(m), k) for m, k in f.den]
            self.plan.append((num, den))
        self.monomials = list(index)

    def values(self, pt) -> List:
        mv = [monomial_value(e, pt) for e in self.monomials]
        out = []
        for num, den in self.plan:
            v = gmpy2.mpq(0)
            for i, c in num:
                v += mv[i] * c
            if den and v:
                d = gmpy2.mpq(1)
                for i, k in den:
                    x = 1 - mv[i]
                    if x == 0:
                        raise PoleError("denominator factor vanishes at the evaluation point")
                    d *= x if k == 1 else x ** k
                v /= d
            out.append(v)
        return out
