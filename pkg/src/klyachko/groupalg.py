"""The twisted group algebra K(q)S_n and the multi-parameter Klyachko element.

Coefficients live in the cyclic ring (``q1...qn = 1``).  The twisted product is

    (f sigma) x| (g tau) = (f * sigma.g) sigma tau

where ``sigma.g`` permutes the variables of ``g``.
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from functools import lru_cache
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import gmpy2

from .cyclotomic import CyclotomicElement, prod_one_minus_powers
from .perm import Permutation, compose, cycle_power, descent_set, descent_stats, major_index, permutations
from .ratfun import (
    BatchEvaluator,
    RatFun,
    random_cyclic_point,
    rf_make,
    rf_sum,
)
from .report import VerificationReport, randomized_mode
from .ring import Exponents, Polynomial, PoleError, RingMode, apply_permutation


@lru_cache(maxsize=None)
def cyclic_mode(n: int) -> RingMode:
    return RingMode(n)


def prefix_exponents(sigma: Sequence[int], j: int) -> Exponents:
    """Exponent vector of ``q_sigma(1) ... q_sigma(j)``."""
    e = [0] * len(sigma)
    for x in sigma[:j]:
        e[x - 1] += 1
    return tuple(e)


def numerator(sigma: Sequence[int]) -> Polynomial:
    """``N(sigma)``: product of the prefix monomials over the descents of sigma."""
    n = len(sigma)
    e = [0] * n
    for j in descent_set(sigma):
        for x in sigma[:j]:
            e[x - 1] += 1
    return Polynomial.monomial(cyclic_mode(n), e)


def denominator(sigma: Sequence[int]) -> Polynomial:
    """``D(sigma)``, expanded: product of ``1 - q_sigma(1)...q_sigma(i)`` for i < n."""
    n = len(sigma)
    p = Polynomial.one(cyclic_mode(n))
    for i in range(1, n):
        p = p.mul_one_minus(_canon(prefix_exponents(sigma, i)))
    return p


def _canon(e: Exponents) -> Exponents:
    last = e[-1]
    return tuple(x - last for x in e) if last else e


def gmaj(sigma: Sequence[int]) -> RatFun:
    """The q-major index ``N(sigma) / D(sigma)``."""
    n = len(sigma)
    return rf_make(numerator(sigma), [prefix_exponents(sigma, i) for i in range(1, n)])


class GroupAlgebraElement:
    """Sparse ``{Permutation: RatFun}``; zero coefficients are never stored."""

    __slots__ = ("n", "coeffs", "_evaluator")

    def __init__(self, n: int, coeffs: Optional[Mapping[Sequence[int], RatFun]] = None):
        self.n = n
        self._evaluator = None
        self.coeffs: Dict[Permutation, RatFun] = {}
        mode = cyclic_mode(n)
        for s, c in (coeffs or {}).items():
            if len(s) != n:
                raise ValueError(f"permutation {s} is not in S_{n}")
            if c.mode != mode:
                raise ValueError(f"coefficient of {s} is not in {mode}")
            if not c.is_zero():
                self.coeffs[Permutation(s)] = c

    @classmethod
    def basis(cls, sigma: Sequence[int], coeff: Optional[RatFun] = None) -> "GroupAlgebraElement":
        n = len(sigma)
        return cls(n, {sigma: coeff if coeff is not None else RatFun.one(cyclic_mode(n))})

    @classmethod
    def identity(cls, n: int) -> "GroupAlgebraElement":
        return cls.basis(Permutation.identity(n))

    @property
    def mode(self) -> RingMode:
        return cyclic_mode(self.n)

    def support(self):
        return set(self.coeffs)

    def coefficient(self, sigma: Sequence[int]) -> RatFun:
        return self.coeffs.get(tuple(sigma), RatFun.zero(self.mode))

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        keys = set(self.coeffs) | set(other.coeffs)
        return GroupAlgebraElement(
            self.n, {s: rf_sum([self.coefficient(s), other.coefficient(s)]) for s in keys}
        )

    def __neg__(self):
        return GroupAlgebraElement(self.n, {s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f) -> "GroupAlgebraElement":
        """Multiply every coefficient by the scalar ``f`` (a RatFun, Polynomial or rational)."""
        return GroupAlgebraElement(self.n, {s: c * f for s, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return twisted_product(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        if self.n != other.n:
            return False
        return all(self.coefficient(s) == other.coefficient(s) for s in set(self.coeffs) | set(other.coeffs))

    __hash__ = None

    def evaluator(self) -> BatchEvaluator:
        if self._evaluator is None:
            self._evaluator = BatchEvaluator(self.coeffs.values())
        return self._evaluator

    def evaluate_at(self, pt) -> Dict[Permutation, object]:
        """Exact ``mpq`` value of every coefficient at the point ``pt``."""
        return dict(zip(self.coeffs, self.evaluator().values(pt)))

    def render(self) -> str:
        return "\n".join(f"{c} * {s}" for s, c in sorted(self.coeffs.items()))

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"GroupAlgebraElement(n={self.n}, terms={len(self.coeffs)})"


def klyachko_element(n: int) -> GroupAlgebraElement:
    """``e_n(q) = sum over S_n of gmaj(sigma) sigma``."""
    return GroupAlgebraElement(n, {s: gmaj(s) for s in permutations(n)})


def partner_element(n: int) -> GroupAlgebraElement:
    """``theta_n(q) = sum_i gmaj(gamma^i) gamma^i``."""
    return GroupAlgebraElement(n, {cycle_power(n, i): gmaj(cycle_power(n, i)) for i in range(n)})


def twisted_product(A: GroupAlgebraElement, B: GroupAlgebraElement) -> GroupAlgebraElement:
    if A.n != B.n:
        raise ValueError(f"twisted product of S_{A.n} and S_{B.n} elements")
    acc: Dict[Permutation, List[RatFun]] = defaultdict(list)
    for s, f in A.coeffs.items():
        for t, g in B.coeffs.items():
            acc[compose(s, t)].append(f * g.apply(s))
    return GroupAlgebraElement(A.n, {r: rf_sum(terms) for r, terms in acc.items()})


def permute_point(pt: Sequence, sigma: Sequence[int]) -> Tuple:
    """The point at which ``g`` is evaluated to get ``(sigma.g)(pt)``."""
    return tuple(pt[x - 1] for x in sigma)


@lru_cache(maxsize=4)
def group_table(n: int):
    """S_n in lexicographic order, its index, and the multiplication table by index."""
    perms = list(permutations(n))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[compose(s, t)] for t in perms] for s in perms]
    return perms, index, table


def twisted_product_at(A: GroupAlgebraElement, B: GroupAlgebraElement, pt) -> Dict[Permutation, object]:
    """Coefficients of ``A x| B`` evaluated at ``pt`` without forming the product."""
    if A.n != B.n:
        raise ValueError(f"twisted product of S_{A.n} and S_{B.n} elements")
    perms, index, table = group_table(A.n)
    b_idx = [index[t] for t in B.coeffs]
    b_eval = B.evaluator()
    out = [gmpy2.mpq(0)] * len(perms)
    for s, fv in zip(A.coeffs, A.evaluator().values(pt)):
        row = table[index[s]]
        for j, gv in zip(b_idx, b_eval.values(permute_point(pt, s))):
            out[row[j]] += fv * gv
    return {perms[k]: v for k, v in enumerate(out) if v != 0}


# randomized comparison


def draw_points(n: int, count: int, seed: int, probe: Callable = None, retries: int = 64) -> List[Tuple]:
    """``count`` seeded product-1 points; ``probe(pt)`` raising PoleError rejects a point."""
    rng = random.Random(seed)
    pts = []
    misses = 0
    while len(pts) < count:
        pt = random_cyclic_point(n, rng)
        if probe is not None:
            try:
                probe(pt)
            except PoleError:
                misses += 1
                if misses > retries:
                    raise
                continue
        pts.append(pt)
    return pts


def compare_at_points(report: VerificationReport, label: str, lhs: Callable, rhs: Callable, pts) -> None:
    """Record one check per coefficient per point for ``lhs(pt) == rhs(pt)``."""
    zero = gmpy2.mpq(0)
    for k, pt in enumerate(pts):
        L, R = lhs(pt), rhs(pt)
        for s in sorted(set(L) | set(R)):
            a, b = L.get(s, zero), R.get(s, zero)
            report.record(f"{label}[{s}]@point{k}", a == b, lambda: {"point": pt, "lhs": a, "rhs": b})


def compare_symbolic(report: VerificationReport, label: str, lhs: GroupAlgebraElement, rhs: GroupAlgebraElement) -> None:
    for s in sorted(lhs.support() | rhs.support()):
        a, b = lhs.coefficient(s), rhs.coefficient(s)
        report.record(f"{label}[{s}]", a == b, lambda: {"lhs": a, "rhs": b})


# the gamma lemma


def check_gamma_lemma(part: str, sigma: Sequence[int], tau: Optional[Sequence[int]] = None, i: int = 1) -> bool:
    """Check one instance of the four identities relating the gamma action to N, D and gmaj."""
    n = len(sigma)
    mode = cyclic_mode(n)
    gamma = cycle_power(n, 1)
    if part == "i":
        return apply_permutation(numerator(sigma), gamma) == Polynomial.variable(mode, 1) * numerator(compose(gamma, sigma))
    if part == "ii":
        return apply_permutation(denominator(sigma), tau) == denominator(compose(tau, sigma))
    if part == "iii":
        gi = cycle_power(n, i)
        lhs = gmaj(sigma).apply(gi)
        rhs = gmaj(compose(gi, sigma)) * Polynomial.monomial(mode, prefix_exponents(Permutation.identity(n), i))
        return lhs == rhs
    if part == "iv":
        dbar = descent_stats(sigma).dbar
        lhs = numerator(compose(sigma, cycle_power(n, i)))
        rhs = numerator(sigma).shift(tuple(-dbar * x for x in prefix_exponents(sigma, i)))
        return lhs == rhs
    raise ValueError(f"unknown lemma part {part!r}")


def lemma_suite(n: int, samples: Optional[int] = None, seed: int = 0) -> VerificationReport:
    """All (sigma, tau, i) when ``samples`` is None, else that many random triples per part."""
    rep = VerificationReport("lemma", {"n": n}, "symbolic" if samples is None else f"sampled(triples={samples}, seed={seed})")
    with rep.timed():
        if samples is None:
            perms = list(permutations(n))
            for s in perms:
                rep.record(f"i[{s}]", check_gamma_lemma("i", s))
                for t in perms:
                    rep.record(f"ii[{s},{t}]", check_gamma_lemma("ii", s, t))
                for i in range(n):
                    rep.record(f"iii[{s},{i}]", check_gamma_lemma("iii", s, i=i))
                    rep.record(f"iv[{s},{i}]", check_gamma_lemma("iv", s, i=i))
        else:
            rng = random.Random(seed)
            for _ in range(samples):
                s = Permutation(rng.sample(range(1, n + 1), n))
                t = Permutation(rng.sample(range(1, n + 1), n))
                i = rng.randrange(n)
                rep.record(f"i[{s}]", check_gamma_lemma("i", s))
                rep.record(f"ii[{s},{t}]", check_gamma_lemma("ii", s, t))
                rep.record(f"iii[{s},{i}]", check_gamma_lemma("iii", s, i=i))
                rep.record(f"iv[{s},{i}]", check_gamma_lemma("iv", s, i=i))
    return rep


# cyclic sums


def _cyclic_run(n: int, start: int, length: int) -> Exponents:
    """Exponents of ``q_{start+1} ... q_{start+length}``, indices mod n."""
    e = [0] * n
    for j in range(start, start + length):
        e[j % n] += 1
    return tuple(e)


def pare_sum(n: int, k: int) -> RatFun:
    """``sum_i (q_{i+1}...q_n)^k / prod_{j<n} (1 - q_{i+1}...q_{i+j})``; equals 1 if k == 0, else 0."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must lie in [0, {n - 1}]")
    mode = cyclic_mode(n)
    terms = []
    for i in range(n):
        num = Polynomial.monomial(mode, tuple(k * x for x in _cyclic_run(n, i, n - i)))
        terms.append(rf_make(num, [_cyclic_run(n, i, j) for j in range(1, n)]))
    return rf_sum(terms, mode)


def gamma_weight_sum(n: int) -> RatFun:
    """``sum_i gmaj(gamma^i) q_1...q_i``, the scalar multiplying gmaj(tau) in theta x| e."""
    mode = cyclic_mode(n)
    ident = Permutation.identity(n)
    return rf_sum(
        [gmaj(cycle_power(n, i)) * Polynomial.monomial(mode, prefix_exponents(ident, i)) for i in range(n)], mode
    )


def pare_suite(n: int) -> VerificationReport:
    rep = VerificationReport("pare", {"n": n})
    mode = cyclic_mode(n)
    with rep.timed():
        for k in range(n):
            value = pare_sum(n, k)
            rep.record(f"k={k}", value == RatFun.constant(mode, 1 if k == 0 else 0), lambda: {"value": value})
        value = gamma_weight_sum(n)
        rep.record("gamma_weight_sum", value == RatFun.one(mode), lambda: {"value": value})
    return rep


# idempotency


def check_idempotency(n: int, method: str = "symbolic", points: int = 20, seed: int = 0) -> VerificationReport:
    """e x| e = e, theta x| e = e and e x| theta = theta, coefficient by coefficient."""
    mode = "symbolic" if method == "symbolic" else randomized_mode(points, seed)
    rep = VerificationReport("idempotent", {"n": n}, mode)
    with rep.timed():
        e = klyachko_element(n)
        th = partner_element(n)
        cases = [("e*e=e", e, e, e), ("theta*e=e", th, e, e), ("e*theta=theta", e, th, th)]
        if method == "symbolic":
            for label, A, B, C in cases:
                compare_symbolic(rep, label, twisted_product(A, B), C)
        else:
            pts = draw_points(n, points, seed, probe=lambda pt: twisted_product_at(e, th, pt))
            for label, A, B, C in cases:
                compare_at_points(rep, label, lambda pt, A=A, B=B: twisted_product_at(A, B, pt), lambda pt, C=C: C.evaluate_at(pt), pts)
    return rep


# the left ideal generated by theta


def ideal_spanning_scalar(tau: Sequence[int]) -> Tuple[Permutation, Polynomial]:
    """Write ``tau = sigma gamma^j`` with ``sigma(1) = 1``; return sigma and ``q_sigma(1)...q_sigma(j)``."""
    n = len(tau)
    tau = Permutation(tau)
    j = (1 - tau.inverse()(1)) % n
    sigma = compose(tau, cycle_power(n, -j))
    return sigma, Polynomial.monomial(cyclic_mode(n), prefix_exponents(sigma, j))


def ideal_basis(n: int) -> List[GroupAlgebraElement]:
    """``sigma x| theta_n`` for every sigma fixing 1, in lexicographic order."""
    th = partner_element(n)
    return [twisted_product(GroupAlgebraElement.basis(s), th) for s in permutations(n) if s[0] == 1]


def check_ideal(n: int, method: str = "symbolic", points: int = 20, seed: int = 0) -> VerificationReport:
    mode = "symbolic" if method == "symbolic" else randomized_mode(points, seed)
    rep = VerificationReport("ideal", {"n": n}, mode)
    with rep.timed():
        th = partner_element(n)
        reps = [s for s in permutations(n) if s[0] == 1]
        basis = {s: twisted_product(GroupAlgebraElement.basis(s), th) for s in reps}
        rep.record("basis_size", len(basis) == math.factorial(n - 1), lambda: {"size": len(basis)})
        seen = set()
        for s, b in basis.items():
            coset = {compose(s, cycle_power(n, i)) for i in range(n)}
            rep.record(f"support[{s}]", b.support() == coset, lambda: {"support": sorted(b.support())})
            rep.record(f"disjoint[{s}]", not (seen & b.support()))
            seen |= b.support()
        if method == "symbolic":
            for tau in permutations(n):
                sigma, scalar = ideal_spanning_scalar(tau)
                lhs = twisted_product(GroupAlgebraElement.basis(tau), th)
                compare_symbolic(rep, f"span[{tau}]", lhs, basis[sigma].scale(scalar))
        else:
            pts = draw_points(n, points, seed, probe=lambda pt: th.evaluate_at(pt))
            for tau in permutations(n):
                sigma, scalar = ideal_spanning_scalar(tau)
                lhs_el = GroupAlgebraElement.basis(tau)
                rhs_el = GroupAlgebraElement.basis(sigma, RatFun(scalar))
                compare_at_points(
                    rep,
                    f"span[{tau}]",
                    lambda pt, A=lhs_el: twisted_product_at(A, th, pt),
                    lambda pt, A=rhs_el: twisted_product_at(A, th, pt),
                    pts,
                )
    return rep


# specialization at a primitive root of unity


class CycloGroupAlgebraElement:
    """Sparse ``{Permutation: CyclotomicElement}`` with the ordinary group algebra product."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Optional[Mapping[Sequence[int], CyclotomicElement]] = None):
        self.n = n
        self.coeffs = {Permutation(s): c for s, c in (coeffs or {}).items() if not c.is_zero()}

    def coefficient(self, sigma) -> CyclotomicElement:
        return self.coeffs.get(tuple(sigma), CyclotomicElement.constant(self.n, 0))

    def __mul__(self, other: "CycloGroupAlgebraElement") -> "CycloGroupAlgebraElement":
        acc: Dict[Permutation, CyclotomicElement] = {}
        for s, f in self.coeffs.items():
            for t, g in other.coeffs.items():
                r = compose(s, t)
                v = f * g
                prev = acc.get(r)
                acc[r] = v if prev is None else prev + v
        return CycloGroupAlgebraElement(self.n, acc)

    def __eq__(self, other):
        if not isinstance(other, CycloGroupAlgebraElement):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    __hash__ = None

    def render(self) -> str:
        return "\n".join(f"{c} * {s}" for s, c in sorted(self.coeffs.items()))


def specialize_ratfun(f: RatFun, n: int) -> CyclotomicElement:
    """Substitute every variable by zeta_n; a monomial with exponents e becomes zeta^sum(e)."""
    val = CyclotomicElement.constant(n, 0)
    for e, c in f.num.terms.items():
        val = val + CyclotomicElement.zeta(n, sum(e)) * c
    one = CyclotomicElement.constant(n, 1)
    for m, k in f.den:
        if sum(m) % n == 0:
            raise PoleError(f"denominator factor vanishes at a primitive {n}-th root of unity")
        val = val * ((one - CyclotomicElement.zeta(n, sum(m))) ** k).inverse()
    return val


def specialize_root_of_unity(A: GroupAlgebraElement) -> CycloGroupAlgebraElement:
    return CycloGroupAlgebraElement(A.n, {s: specialize_ratfun(c, A.n) for s, c in A.coeffs.items()})


def klyachko_idempotent(n: int) -> CycloGroupAlgebraElement:
    """``kappa_n = (1/n) sum zeta^maj(sigma) sigma``."""
    inv_n = CyclotomicElement.constant(n, 1) / n
    return CycloGroupAlgebraElement(n, {s: CyclotomicElement.zeta(n, major_index(s)) * inv_n for s in permutations(n)})


def classical_partner(n: int) -> CycloGroupAlgebraElement:
    """``eta_n = (1/n) sum gamma^i / zeta^i``."""
    inv_n = CyclotomicElement.constant(n, 1) / n
    return CycloGroupAlgebraElement(n, {cycle_power(n, i): CyclotomicElement.zeta(n, -i) * inv_n for i in range(n)})


def check_specialization(n: int) -> VerificationReport:
    rep = VerificationReport("cyclotomic", {"n": n})
    with rep.timed():
        prod = prod_one_minus_powers(n)
        rep.record("prod(1-zeta^i)=n", prod == CyclotomicElement.constant(n, n), lambda: {"value": prod})
        kappa = klyachko_idempotent(n)
        spec = specialize_root_of_unity(klyachko_element(n))
        for s in sorted(set(kappa.coeffs) | set(spec.coeffs)):
            a, b = spec.coefficient(s), kappa.coefficient(s)
            rep.record(f"e->kappa[{s}]", a == b, lambda: {"specialized": a, "expected": b})
        eta = classical_partner(n)
        spec_theta = specialize_root_of_unity(partner_element(n))
        rep.record("theta->eta", spec_theta == eta)
        rep.record("kappa*kappa=kappa", kappa * kappa == kappa)
        rep.record("eta*kappa=kappa", eta * kappa == kappa)
        rep.record("kappa*eta=eta", kappa * eta == eta)
    return rep
