"""The generating series of the elements ``e_n(x1..xn)`` and its product formula.

Series are indexed by permutations of every size up to ``max_size`` and
truncated at total degree ``max_degree``.  The star product concatenates
permutations up to standardization and relabels coefficient variables along
the letters of each half:

    (f sigma) * (g tau) = sum over u.v with st(u)=sigma, st(v)=tau of f(x_u) g(x_v) u.v
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .perm import Permutation, descent_set, permutations, render_word
from .ppart import chain_factor
from .report import VerificationReport
from .ring import Polynomial, RingMode, render_polynomial
from .series import expand, mul_trunc

EMPTY = Permutation(())


def series_mode(max_size: int) -> RingMode:
    return RingMode.free(max_size, "x")


class TruncatedSeries:
    """``{Permutation: Polynomial}`` with sizes at most ``max_size`` and degrees at most ``max_degree``."""

    __slots__ = ("max_size", "max_degree", "coeffs", "truncated")

    def __init__(self, max_size: int, max_degree: int, coeffs: Optional[Mapping] = None, truncated: bool = False):
        self.max_size = max_size
        self.max_degree = max_degree
        self.truncated = truncated
        mode = series_mode(max_size)
        self.coeffs: Dict[Permutation, Polynomial] = {}
        for s, p in (coeffs or {}).items():
            s = Permutation(s)
            if len(s) > max_size:
                self.truncated = True
                continue
            if p.mode != mode:
                raise ValueError(f"coefficient of {render_word(s)} is not in {mode}")
            if any(any(e[len(s):]) for e in p.terms):
                raise ValueError(f"coefficient of {render_word(s)} uses variables beyond x{len(s)}")
            p = p.truncate(max_degree)
            if not p.is_zero():
                self.coeffs[s] = p

    @classmethod
    def monomial(cls, max_size: int, max_degree: int, sigma: Sequence[int], coeff: Optional[Polynomial] = None):
        mode = series_mode(max_size)
        return cls(max_size, max_degree, {tuple(sigma): coeff if coeff is not None else Polynomial.one(mode)})

    @property
    def mode(self) -> RingMode:
        return series_mode(self.max_size)

    def coefficient(self, sigma: Sequence[int]) -> Polynomial:
        return self.coeffs.get(tuple(sigma), Polynomial.zero(self.mode))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        _check_compatible(self, other)
        out = dict(self.coeffs)
        for s, p in other.coeffs.items():
            out[s] = out[s] + p if s in out else p
        return TruncatedSeries(self.max_size, self.max_degree, out, self.truncated or other.truncated)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return star_product(self, other)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.max_size, self.max_degree, self.coeffs) == (other.max_size, other.max_degree, other.coeffs)

    __hash__ = None

    def retruncate(self, max_size: int, max_degree: int) -> "TruncatedSeries":
        """Restrict to smaller bounds (coefficients move to the smaller variable set)."""
        if max_size > self.max_size or max_degree > self.max_degree:
            raise ValueError("can only shrink truncation bounds")
        mode = series_mode(max_size)
        out = {}
        for s, p in self.coeffs.items():
            if len(s) <= max_size:
                out[s] = Polynomial(mode, {e[:max_size]: c for e, c in p.terms.items()})
        return TruncatedSeries(max_size, max_degree, out, self.truncated or max_size < self.max_size)

    def render(self) -> str:
        keys = sorted(self.coeffs, key=lambda s: (len(s), s))
        return "\n".join(f"({render_polynomial(self.coeffs[s])}) * {render_word(s)}" for s in keys)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"TruncatedSeries(N={self.max_size}, D={self.max_degree}, terms={len(self.coeffs)})"


def _check_compatible(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if (a.max_size, a.max_degree) != (b.max_size, b.max_degree):
        raise ValueError(
            f"series truncated at (N={a.max_size}, D={a.max_degree}) and (N={b.max_size}, D={b.max_degree})"
        )


def relabel(p: Polynomial, letters: Sequence[int]) -> Polynomial:
    """Substitute ``x_i -> x_{letters[i-1]}``."""
    n = p.mode.n
    out = {}
    for e, c in p.terms.items():
        new = [0] * n
        for i, a in enumerate(letters):
            new[a - 1] = e[i]
        out[tuple(new)] = c
    return Polynomial._raw(p.mode, out)


def star_words(sigma: Sequence[int], tau: Sequence[int]) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...], Permutation]]:
    """``(a, b, u.v)`` for every split, with ``a``, ``b`` the sorted letters of ``u`` and ``v``."""
    s, t = len(sigma), len(tau)
    letters = range(1, s + t + 1)
    for a in itertools.combinations(letters, s):
        b = tuple(x for x in letters if x not in a)
        w = tuple(a[i - 1] for i in sigma) + tuple(b[i - 1] for i in tau)
        yield a, b, Permutation._unchecked(w)


def star_product(A: TruncatedSeries, B: TruncatedSeries) -> TruncatedSeries:
    _check_compatible(A, B)
    N, D = A.max_size, A.max_degree
    truncated = A.truncated or B.truncated
    out: Dict[Permutation, Polynomial] = {}
    for sigma, f in A.coeffs.items():
        for tau, g in B.coeffs.items():
            if len(sigma) + len(tau) > N:
                truncated = True
                continue
            for a, b, w in star_words(sigma, tau):
                term = mul_trunc(relabel(f, a), relabel(g, b), D)
                out[w] = out[w] + term if w in out else term
    return TruncatedSeries(N, D, out, truncated)


def csigma_closed(sigma: Sequence[int], max_size: int, degree: int) -> Polynomial:
    """Expansion of ``prod_{j in D(sigma)} x_{s1..sj} / prod_{i<=n} (1 - x_{s1..si})``."""
    if len(sigma) > max_size:
        raise ValueError(f"permutation of size {len(sigma)} exceeds max size {max_size}")
    return expand(chain_factor(sigma, series_mode(max_size)), degree)


def increasing_factorizations(sigma: Sequence[int]) -> Iterator[List[Tuple[int, ...]]]:
    """Ways to cut ``sigma`` into nonempty increasing words (every descent must be a cut)."""
    n = len(sigma)
    if n == 0:
        yield []
        return
    forced = set(descent_set(sigma))
    optional = [j for j in range(1, n) if j not in forced]
    for r in range(len(optional) + 1):
        for extra in itertools.combinations(optional, r):
            cuts = [0] + sorted(forced | set(extra)) + [n]
            yield [tuple(sigma[cuts[k]:cuts[k + 1]]) for k in range(len(cuts) - 1)]


def _decreasing(sizes: Sequence[int], budget: int, floor: int = 0) -> Iterator[Tuple[int, ...]]:
    """Strictly decreasing ``n1 > ... > nk >= floor`` with ``sum n_i * sizes[i] <= budget``."""
    if not sizes:
        yield ()
        return
    last = sizes[-1]
    value = floor
    while value * last <= budget:
        for head in _decreasing(sizes[:-1], budget - value * last, value + 1):
            yield head + (value,)
        value += 1


def csigma_brute(sigma: Sequence[int], degree: int, nvars: Optional[int] = None) -> Polynomial:
    """Sum over increasing factorizations and strictly decreasing exponents, enumerated directly."""
    mode = series_mode(len(sigma) if nvars is None else nvars)
    terms: Dict[Tuple[int, ...], int] = {}
    for parts in increasing_factorizations(sigma):
        for exps in _decreasing([len(p) for p in parts], degree):
            e = [0] * mode.n
            for part, k in zip(parts, exps):
                for x in part:
                    e[x - 1] = k
            e = tuple(e)
            terms[e] = terms.get(e, 0) + 1
    return Polynomial(mode, terms)


def theta_closed(max_size: int, degree: int) -> TruncatedSeries:
    coeffs = {s: csigma_closed(s, max_size, degree) for n in range(max_size + 1) for s in permutations(n)}
    return TruncatedSeries(max_size, degree, coeffs)


def product_factor(m: int, max_size: int, degree: int) -> TruncatedSeries:
    """``eps + sum_{a>=1} (x1...xa)^m (12...a)``."""
    mode = series_mode(max_size)
    coeffs = {EMPTY: Polynomial.one(mode)}
    for a in range(1, max_size + 1):
        if m * a <= degree:
            coeffs[Permutation.identity(a)] = Polynomial.monomial(mode, (m,) * a + (0,) * (max_size - a))
    return TruncatedSeries(max_size, degree, coeffs)


def product_expansion(max_size: int, degree: int) -> TruncatedSeries:
    """``... * F(2) * F(1) * F(0)``; factors with ``m > degree`` truncate to ``eps``."""
    out = product_factor(degree, max_size, degree)
    for m in range(degree - 1, -1, -1):
        out = star_product(out, product_factor(m, max_size, degree))
    return out


def check_product_theorem(max_size: int, degree: int) -> bool:
    if theta_closed(max_size, degree) != product_expansion(max_size, degree):
        return False
    return all(
        csigma_closed(s, len(s), degree) == csigma_brute(s, degree)
        for n in range(max_size + 1)
        for s in permutations(n)
    )


def theta_suite(max_size: int = 4, degree: int = 6) -> VerificationReport:
    """Closed form against the product formula, the brute-force coefficients, and free-mode gmaj."""
    rep = VerificationReport("theta", {"max_size": max_size, "degree": degree}, "symbolic")
    with rep.timed():
        closed = theta_closed(max_size, degree)
        product = product_expansion(max_size, degree)
        mode = series_mode(max_size)
        for n in range(max_size + 1):
            for s in permutations(n):
                c, p = closed.coefficient(s), product.coefficient(s)
                rep.record(f"product[{render_word(s)}]", c == p, lambda: {"closed": c, "product": p})
                b = csigma_brute(s, degree, max_size)
                rep.record(f"brute[{render_word(s)}]", c == b, lambda: {"closed": c, "brute": b})
                if n:
                    full = Polynomial.one(mode) - Polynomial.monomial(mode, (1,) * n + (0,) * (max_size - n))
                    lhs = mul_trunc(full, c, degree)
                    rhs = expand(chain_factor(s, mode, n - 1), degree)
                    rep.record(f"gmaj[{render_word(s)}]", lhs == rhs, lambda: {"lhs": lhs, "rhs": rhs})
    return rep
