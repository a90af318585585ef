"""Exact arithmetic in the cyclotomic field Q(zeta), zeta a primitive n-th root of unity.

Elements are residues modulo the n-th cyclotomic polynomial, stored as
coefficient tuples (constant term first) of length ``phi(n)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from .ring import _norm, cyclotomic_polynomial


@lru_cache(maxsize=None)
def phi_coefficients(n: int) -> Tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    p = cyclotomic_polynomial(n)
    deg = p.total_degree()
    return tuple(_norm(p.terms.get((k,), 0)) for k in range(deg + 1))


def _trim(a: List) -> List:
    while a and a[-1] == 0:
        a.pop()
    return a


def _reduce(a: Sequence, n: int) -> Tuple:
    """Remainder of ``a`` modulo the monic polynomial Phi_n."""
    phi = phi_coefficients(n)
    d = len(phi) - 1
    a = list(a)
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            for j in range(d):
                if phi[j]:
                    a[k - d + j] -= c * phi[j]
            a[k] = 0
    a = a[:d] + [0] * (d - len(a))
    return tuple(_norm(c) for c in a)


def _poly_divmod(a: List[Fraction], b: List[Fraction]):
    a = _trim(list(a))
    b = _trim(list(b))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        c = Fraction(a[-1]) / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for j, bj in enumerate(b):
            a[k + j] -= c * bj
        a.pop()
        _trim(a)
    return q, a


def _poly_mul(a: Sequence, b: Sequence) -> List:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: Sequence, b: Sequence) -> List:
    m = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(m)]


class CyclotomicElement:
    """Immutable element of Q(zeta_n)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence = ()):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.coeffs = _reduce(coeffs, n)

    @classmethod
    def _raw(cls, n: int, coeffs: Tuple) -> "CyclotomicElement":
        x = object.__new__(cls)
        x.n = n
        x.coeffs = coeffs
        return x

    @classmethod
    def constant(cls, n: int, c) -> "CyclotomicElement":
        return cls(n, [c])

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CyclotomicElement":
        """``zeta**k``; ``k`` is taken modulo ``n``."""
        k %= n
        return cls(n, [0] * k + [1])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other) -> "CyclotomicElement":
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement.constant(self.n, other)
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"mixing Q(zeta_{self.n}) and Q(zeta_{other.n})")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement._raw(self.n, tuple(_norm(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement._raw(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement._raw(self.n, _reduce(_poly_mul(self.coeffs, other.coeffs), self.n))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicElement":
        """Inverse via the extended Euclidean algorithm against Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        # invariant: r_i = s_i * a (mod phi)
        r0, r1 = [Fraction(c) for c in phi_coefficients(self.n)], _trim([Fraction(c) for c in self.coeffs])
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        return CyclotomicElement(self.n, [x / c for x in s1])

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CyclotomicElement.constant(self.n, other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicElement.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicElement.constant(self.n, other)
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return f"CyclotomicElement({self.n}, {self})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = f"{c.numerator}/{c.denominator}" if isinstance(c, Fraction) else str(c)
            if k == 0:
                terms.append(cs)
            else:
                z = "z" if k == 1 else f"z^{k}"
                terms.append(z if c == 1 else f"-{z}" if c == -1 else f"{cs}*{z}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def cyclo_arith(a: CyclotomicElement, b: CyclotomicElement, op: str) -> CyclotomicElement:
    if op == "add":
        return a + b
    if op == "multiply":
        return a * b
    if op == "invert-a":
        return a.inverse()
    raise ValueError(f"unknown operation {op!r}")


def prod_one_minus_powers(n: int) -> CyclotomicElement:
    """``(1 - zeta)(1 - zeta^2)...(1 - zeta^(n-1))``, which should equal ``n``."""
    one = CyclotomicElement.constant(n, 1)
    out = one
    for i in range(1, n):
        out = out * (one - CyclotomicElement.zeta(n, i))
    return out
