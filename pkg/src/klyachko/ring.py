"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A :class:`Polynomial` lives in a :class:`RingMode`.  In *free* mode the
variables are independent; in *cyclic* mode they satisfy the single relation
``q1*q2*...*qn = 1``, which is realized by keeping every exponent vector in
the canonical form whose last entry is zero.

Coefficients are Python ints or :class:`fractions.Fraction`; integral
fractions are stored as ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Mapping, Optional, Sequence, Tuple

import gmpy2

Exponents = Tuple[int, ...]

_MPQ = type(gmpy2.mpq())
_MPZ = type(gmpy2.mpz())


class DimensionError(ValueError):
    """Vector length or permutation degree does not match the variable count."""


class IncompatibleModeError(ValueError):
    """Operands live in different rings."""


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_div` when the quotient is not a Laurent polynomial."""


class PoleError(ZeroDivisionError):
    """Evaluation hit a zero denominator."""


class ConstraintError(ValueError):
    """Evaluation point violates the cyclic relation."""


@dataclass(frozen=True)
class RingMode:
    n: int
    cyclic: bool = True
    var: str = "q"

    def __post_init__(self):
        if self.n < 0 or (self.cyclic and self.n < 1):
            raise ValueError(f"invalid variable count {self.n} for {'cyclic' if self.cyclic else 'free'} mode")

    @classmethod
    def free(cls, n: int, var: str = "x") -> "RingMode":
        return cls(n, cyclic=False, var=var)

    @property
    def zero_exponent(self) -> Exponents:
        return (0,) * self.n


def _norm(c):
    """Store integral rationals as ints."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    if type(c) is _MPQ or type(c) is _MPZ:
        c = Fraction(int(c.numerator), int(c.denominator))
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficient must be an exact rational, got {type(c).__name__}")


def canonicalize_exponents(e: Sequence[int], mode: RingMode) -> Exponents:
    """Return the canonical representative of ``e`` in ``mode``.

    >>> canonicalize_exponents((2, 0, 1), RingMode(3))
    (1, -1, 0)
    """
    if len(e) != mode.n:
        raise DimensionError(f"exponent vector of length {len(e)} in a ring with {mode.n} variables")
    if not mode.cyclic or e[-1] == 0:
        return tuple(e)
    last = e[-1]
    return tuple(x - last for x in e)


def gradlex_key(e: Exponents):
    """Sort key: total degree first, then lexicographic with q1 > q2 > ..."""
    return (sum(e), tuple(-x for x in e))


def is_lex_positive(e: Exponents) -> bool:
    for x in e:
        if x:
            return x > 0
    return False


class Polynomial:
    """Immutable sparse Laurent polynomial ``{exponents: coefficient}``."""

    __slots__ = ("mode", "terms", "_hash")

    def __init__(self, mode: RingMode, terms: Optional[Mapping[Sequence[int], object]] = None):
        clean: Dict[Exponents, object] = {}
        for e, c in (terms or {}).items():
            c = _norm(c)
            if c == 0:
                continue
            e = canonicalize_exponents(tuple(e), mode)
            s = clean.get(e, 0) + c
            if s:
                clean[e] = _norm(s)
            else:
                clean.pop(e, None)
        self.mode = mode
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, mode: RingMode, terms: Dict[Exponents, object]) -> "Polynomial":
        # terms must already be canonical with no zero coefficients
        p = object.__new__(cls)
        p.mode = mode
        p.terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, mode: RingMode) -> "Polynomial":
        return cls._raw(mode, {})

    @classmethod
    def constant(cls, mode: RingMode, c=1) -> "Polynomial":
        c = _norm(c)
        return cls._raw(mode, {mode.zero_exponent: c} if c else {})

    @classmethod
    def one(cls, mode: RingMode) -> "Polynomial":
        return cls.constant(mode, 1)

    @classmethod
    def monomial(cls, mode: RingMode, exponents: Sequence[int], coeff=1) -> "Polynomial":
        return cls(mode, {tuple(exponents): coeff})

    @classmethod
    def variable(cls, mode: RingMode, i: int) -> "Polynomial":
        """The variable with 1-based index ``i``."""
        e = [0] * mode.n
        e[i - 1] = 1
        return cls.monomial(mode, e)

    # predicates and access

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.mode.zero_exponent in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self):
        return self.terms.get(self.mode.zero_exponent, 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: gradlex_key(t[0]))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.mode != self.mode:
                raise IncompatibleModeError(f"{self.mode} vs {other.mode}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.mode, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s) if type(s) is not int else s
            else:
                del out[e]
        return Polynomial._raw(self.mode, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.mode, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _norm(other)
            if c == 0:
                return Polynomial.zero(self.mode)
            return Polynomial._raw(self.mode, {e: _norm(v * c) for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponents, object] = {}
        # canonical vectors have last entry 0, so sums stay canonical
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.mode, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only exist for monomials")
            (e, c), = self.terms.items()
            return Polynomial(self.mode, {tuple(x * k for x in e): Fraction(c) ** k})
        result = Polynomial.one(self.mode)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, m: Sequence[int], coeff=1) -> "Polynomial":
        """Multiply by the monomial ``coeff * x^m``."""
        coeff = _norm(coeff)
        m = canonicalize_exponents(tuple(m), self.mode)
        if coeff == 0:
            return Polynomial.zero(self.mode)
        return Polynomial._raw(
            self.mode,
            {tuple([x + y for x, y in zip(e, m)]): (c if coeff == 1 else _norm(c * coeff)) for e, c in self.terms.items()},
        )

    def mul_one_minus(self, m: Exponents) -> "Polynomial":
        """``self * (1 - x^m)`` without building the binomial."""
        out = dict(self.terms)
        for e, c in self.terms.items():
            e2 = tuple([x + y for x, y in zip(e, m)])
            s = out.get(e2, 0) - c
            if s:
                out[e2] = _norm(s)
            else:
                del out[e2]
        return Polynomial._raw(self.mode, out)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.mode == other.mode and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.mode, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.mode, frozenset(self.terms.items())))
        return self._hash

    def map_exponents(self, f) -> "Polynomial":
        return Polynomial(self.mode, {f(e): c for e, c in self.terms.items()})

    def truncate(self, degree: int) -> "Polynomial":
        """Drop every term of total degree above ``degree``."""
        return Polynomial._raw(self.mode, {e: c for e, c in self.terms.items() if sum(e) <= degree})

    def to_mode(self, mode: RingMode) -> "Polynomial":
        if mode.n != self.mode.n:
            raise DimensionError(f"cannot move a {self.mode.n}-variable polynomial into {mode.n} variables")
        return Polynomial(mode, self.terms)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return render_polynomial(self)

    def evaluate(self, point):
        return evaluate(self, point)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.mode != b.mode:
        raise IncompatibleModeError(f"{a.mode} vs {b.mode}")
    if op == "add":
        return a + b
    if op == "multiply":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# exact division


def one_minus_monomial(p: Polynomial) -> Optional[Exponents]:
    """If ``p == 1 - x^m`` with ``m != 0`` return ``m``."""
    if len(p.terms) != 2 or p.terms.get(p.mode.zero_exponent) != 1:
        return None
    for e, c in p.terms.items():
        if any(e):
            return e if c == -1 else None
    return None


def div_one_minus(p: Polynomial, m: Exponents) -> Optional[Polynomial]:
    """Quotient ``p / (1 - x^m)`` or ``None`` when it is not a Laurent polynomial.

    The exponent lattice splits into cosets of ``Z*m``; on each coset this is
    univariate division by ``1 - t``, which succeeds iff the coefficients sum
    to zero, and the quotient coefficients are the running sums.
    """
    i0 = next(i for i, x in enumerate(m) if x)
    step = m[i0]
    cosets: Dict[Exponents, Dict[int, object]] = {}
    for e, c in p.terms.items():
        k = e[i0] // step
        base = tuple([x - k * y for x, y in zip(e, m)])
        cosets.setdefault(base, {})[k] = c
    out: Dict[Exponents, object] = {}
    for base, line in cosets.items():
        if sum(line.values()) != 0:
            return None
        running = 0
        lo, hi = min(line), max(line)
        for k in range(lo, hi):
            running += line.get(k, 0)
            if running:
                out[tuple([x + k * y for x, y in zip(base, m)])] = _norm(running)
    return Polynomial._raw(p.mode, out)


def _lex_leading(terms: Mapping[Exponents, object]) -> Exponents:
    return max(terms)


def exact_div(p: Polynomial, d: Polynomial) -> Polynomial:
    """Return ``q`` with ``q * d == p`` exactly, or raise :class:`NotDivisible`.

    Laurent division reduces to ordinary polynomial division after shifting
    both operands so that no variable divides them.
    """
    if p.mode != d.mode:
        raise IncompatibleModeError(f"{p.mode} vs {d.mode}")
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return Polynomial.zero(p.mode)
    if d.is_monomial():
        (e, c), = d.terms.items()
        return p.shift(tuple(-x for x in e), Fraction(1) / c)
    m = one_minus_monomial(d)
    if m is not None:
        q = div_one_minus(p, m)
        if q is None:
            raise NotDivisible(f"{d} does not divide {p}")
        return q
    n = p.mode.n
    p_low = tuple(min(e[i] for e in p.terms) for i in range(n))
    d_low = tuple(min(e[i] for e in d.terms) for i in range(n))
    rem = {tuple(x - y for x, y in zip(e, p_low)): Fraction(c) for e, c in p.terms.items()}
    dd = {tuple(x - y for x, y in zip(e, d_low)): c for e, c in d.terms.items()}
    d_lead = _lex_leading(dd)
    d_lc = dd[d_lead]
    quot: Dict[Exponents, Fraction] = {}
    while rem:
        lead = _lex_leading(rem)
        delta = tuple(x - y for x, y in zip(lead, d_lead))
        if any(x < 0 for x in delta):
            raise NotDivisible(f"{d} does not divide {p}")
        coeff = rem[lead] / d_lc
        quot[delta] = coeff
        for e, c in dd.items():
            t = tuple(x + y for x, y in zip(e, delta))
            s = rem.get(t, 0) - coeff * c
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    offset = tuple(x - y for x, y in zip(p_low, d_low))
    return Polynomial(p.mode, {tuple(x + y for x, y in zip(e, offset)): c for e, c in quot.items()})


def poly_exact_div(p: Polynomial, d: Polynomial) -> Optional[Polynomial]:
    """Like :func:`exact_div` but returns ``None`` instead of raising."""
    try:
        return exact_div(p, d)
    except NotDivisible:
        return None


# permutation action and evaluation


def permute_exponents(e: Exponents, sigma: Sequence[int]) -> Exponents:
    """Exponent of variable ``sigma(i)`` in the image is the exponent of variable ``i``."""
    out = [0] * len(e)
    for i, x in enumerate(e):
        out[sigma[i] - 1] = x
    return tuple(out)


def apply_permutation(p: Polynomial, sigma: Sequence[int]) -> Polynomial:
    """``sigma . p(q1..qn) = p(q_sigma(1), ..., q_sigma(n))``."""
    if len(sigma) != p.mode.n:
        raise DimensionError(f"permutation of degree {len(sigma)} acting on {p.mode.n} variables")
    mode = p.mode
    out = {}
    for e, c in p.terms.items():
        out[canonicalize_exponents(permute_exponents(e, sigma), mode)] = c
    return Polynomial._raw(mode, out)


def check_point(point: Sequence, mode: RingMode) -> Tuple:
    if len(point) != mode.n:
        raise DimensionError(f"point of length {len(point)} for {mode.n} variables")
    pt = tuple(to_mpq(x) for x in point)
    if mode.cyclic:
        prod = gmpy2.mpq(1)
        for x in pt:
            prod *= x
        if prod != 1:
            raise ConstraintError(f"cyclic point must have coordinate product 1, got {prod}")
    return pt


def to_mpq(x):
    return x if type(x) is _MPQ else gmpy2.mpq(x)


def monomial_value(e: Exponents, pt, cache: Optional[dict] = None):
    """Value of ``x^e`` at a point of ``mpq`` coordinates."""
    if cache is not None:
        v = cache.get(e)
        if v is not None:
            return v
    v = gmpy2.mpq(1)
    for x, k in zip(pt, e):
        if k:
            if k < 0:
                if x == 0:
                    raise PoleError("negative power of a zero coordinate")
                v /= x ** (-k)
            else:
                v *= x ** k
    if cache is not None:
        cache[e] = v
    return v


def evaluate_mpq(p: Polynomial, pt, cache: Optional[dict] = None):
    total = gmpy2.mpq(0)
    for e, c in p.terms.items():
        total += monomial_value(e, pt, cache) * (c if type(c) is int else to_mpq(c))
    return total


def to_fraction(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def evaluate(p: Polynomial, point: Sequence) -> Fraction:
    """Exact value of ``p`` at ``point``.

    Cyclic points must have coordinate product 1.
    """
    pt = check_point(point, p.mode)
    return to_fraction(evaluate_mpq(p, pt))


# rendering


def render_coefficient(c) -> str:
    c = _norm(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def render_monomial(e: Exponents, var: str) -> str:
    parts = []
    for i, k in enumerate(e, start=1):
        if k == 1:
            parts.append(f"{var}{i}")
        elif k:
            parts.append(f"{var}{i}^{k}")
    return "*".join(parts)


def render_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = render_monomial(e, p.mode.var)
        if not mono:
            body = render_coefficient(a)
        elif a == 1:
            body = mono
        else:
            body = f"{render_coefficient(a)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# univariate cyclotomic polynomials


def _divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


_PHI_CACHE: Dict[int, Polynomial] = {}


def cyclotomic_polynomial(n: int) -> Polynomial:
    """The n-th cyclotomic polynomial in one free variable ``x``.

    Computed as ``x^n - 1`` divided exactly by ``Phi_d`` for each proper divisor ``d``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n in _PHI_CACHE:
        return _PHI_CACHE[n]
    mode = RingMode.free(1)
    p = Polynomial(mode, {(n,): 1, (0,): -1})
    for d in _divisors(n):
        if d < n:
            p = exact_div(p, cyclotomic_polynomial(d))
    _PHI_CACHE[n] = p
    return p
