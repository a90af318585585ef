"""Power series in free mode, truncated at a total degree."""

from __future__ import annotations

from typing import Dict, Iterable, Sequence

from .ring import Exponents, Polynomial, RingMode
from .ratfun import RatFun


def mul_trunc(a: Polynomial, b: Polynomial, degree: int) -> Polynomial:
    """``a * b`` keeping only terms of total degree at most ``degree``."""
    if a.mode != b.mode:
        raise ValueError(f"cannot multiply series in {a.mode} and {b.mode}")
    out: Dict[Exponents, object] = {}
    bt = [(e, sum(e), c) for e, c in b.terms.items()]
    for e1, c1 in a.terms.items():
        d1 = sum(e1)
        if d1 > degree:
            continue
        for e2, d2, c2 in bt:
            if d1 + d2 <= degree:
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
    return Polynomial(a.mode, out)


def geometric(mode: RingMode, m: Sequence[int], degree: int) -> Polynomial:
    """``1/(1 - x^m)`` expanded up to total degree ``degree``; ``m`` must have positive degree."""
    step = sum(m)
    if mode.cyclic or step <= 0 or min(m) < 0:
        raise ValueError(f"1/(1 - x^{tuple(m)}) has no power series expansion")
    return Polynomial(mode, {tuple(k * x for x in m): 1 for k in range(degree // step + 1)})


def product_trunc(factors: Iterable[Polynomial], mode: RingMode, degree: int) -> Polynomial:
    out = Polynomial.one(mode)
    for f in factors:
        out = mul_trunc(out, f, degree)
    return out


def expand(f: RatFun, degree: int) -> Polynomial:
    """Power series of a free-mode rational function, truncated."""
    factors = [f.num.truncate(degree)]
    for m, k in f.den:
        factors.extend([geometric(f.mode, m, degree)] * k)
    return product_trunc(factors, f.mode, degree)
