"""(P, omega)-partitions of disjoint unions of chains with the identity labelling.

For the two-chain poset ``P_{u,v}`` the linear extensions are exactly the
shuffles of ``u`` and ``v``; comparing the generating function of its
P-partitions with the sum of ``gmaj`` over those shuffles shows that
``<e_n, u sh v>`` vanishes once ``q1*...*qn = 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .groupalg import cyclic_mode
from .lie import complementary_pairs
from .perm import Permutation, descent_set, is_subsequence, permutations, render_word
from .ratfun import RatFun, rf_equal, rf_sum
from .report import VerificationReport
from .ring import Polynomial, RingMode
from .series import geometric, product_trunc

Word = Tuple[int, ...]


@dataclass(frozen=True)
class ChainPoset:
    """Disjoint union of chains, each listed bottom to top, labelled by ``omega(i) = i``."""

    chains: Tuple[Word, ...]
    n: int

    def __init__(self, chains: Sequence[Sequence[int]], n: Optional[int] = None, labelling=None):
        chains = tuple(tuple(int(x) for x in c) for c in chains)
        if any(not c for c in chains):
            raise ValueError("empty chain")
        elements = [x for c in chains for x in c]
        if n is None:
            n = len(elements)
        if sorted(elements) != list(range(1, n + 1)):
            raise ValueError(f"chains {chains} do not partition 1..{n}")
        if labelling is not None and tuple(labelling) != tuple(range(1, n + 1)):
            raise ValueError("only the identity labelling is supported")
        object.__setattr__(self, "chains", chains)
        object.__setattr__(self, "n", n)

    def relations(self) -> Iterator[Tuple[int, int]]:
        """All comparable pairs ``(y, z)`` with ``y < z`` in the poset."""
        for c in self.chains:
            yield from itertools.combinations(c, 2)

    def __str__(self):
        return "".join("[" + " ".join(map(str, c)) + "]" for c in self.chains)


def poset_from_words(u: Sequence[int], v: Sequence[int]) -> ChainPoset:
    if not u or not v:
        raise ValueError("both chains must be nonempty")
    return ChainPoset([u, v])


def linear_extensions(P: ChainPoset) -> List[Permutation]:
    return [w for w in permutations(P.n) if all(is_subsequence(c, w) for c in P.chains)]


def prefix_vector(w: Sequence[int], j: int, n: int) -> Tuple[int, ...]:
    e = [0] * n
    for x in w[:j]:
        e[x - 1] += 1
    return tuple(e)


def chain_factor(word: Sequence[int], mode: RingMode, length: Optional[int] = None) -> RatFun:
    """``prod_{j in D(w)} x_{w1..wj} / prod_{i<=length} (1 - x_{w1..wi})``; ``length`` defaults to ``len(w)``."""
    n = mode.n
    num = [0] * n
    for j in descent_set(word):
        for x in word[:j]:
            num[x - 1] += 1
    length = len(word) if length is None else length
    return RatFun.make(Polynomial.monomial(mode, num), [prefix_vector(word, i, n) for i in range(1, length + 1)])


def free_gmaj(sigma: Sequence[int], var: str = "q") -> RatFun:
    """``gmaj`` without the relation ``q1*...*qn = 1``."""
    n = len(sigma)
    return chain_factor(sigma, RingMode.free(n, var), n - 1)


def genfun_closed_form(P: ChainPoset, var: str = "x") -> RatFun:
    mode = RingMode.free(P.n, var)
    out = RatFun.one(mode)
    for c in P.chains:
        out = out * chain_factor(c, mode)
    return out


def _maps(n: int, degree: int) -> Iterator[Tuple[int, ...]]:
    """All ``f`` in ``N^n`` with ``sum(f) <= degree``."""
    if n == 0:
        yield ()
        return
    for first in range(degree + 1):
        for rest in _maps(n - 1, degree - first):
            yield (first,) + rest


def ppartitions_truncated(P: ChainPoset, degree: int, var: str = "x") -> Polynomial:
    """Brute force: order reversing maps, strict wherever the labelling decreases upward."""
    mode = RingMode.free(P.n, var)
    rel = list(P.relations())
    terms = {}
    for f in _maps(P.n, degree):
        if all(f[y - 1] > f[z - 1] if y > z else f[y - 1] >= f[z - 1] for y, z in rel):
            terms[f] = 1
    return Polynomial(mode, terms)


def stanley_series(P: ChainPoset, degree: int, var: str = "x") -> Polynomial:
    """Sum over linear extensions of the descent monomial over all n prefix factors, expanded."""
    mode = RingMode.free(P.n, var)
    total = Polynomial.zero(mode)
    for w in linear_extensions(P):
        f = chain_factor(w, mode)
        factors = [f.num] + [geometric(mode, prefix_vector(w, i, P.n), degree) for i in range(1, P.n + 1)]
        total = total + product_trunc(factors, mode, degree)
    return total


def check_stanley_formula(P: ChainPoset, degree: int) -> bool:
    return stanley_series(P, degree) == ppartitions_truncated(P, degree)


def shuffle_sides(u: Sequence[int], v: Sequence[int]) -> Tuple[RatFun, RatFun]:
    """Free-mode ``sum_{w in L(P_uv)} gmaj(w)`` and ``(1 - q1*...*qn) F(P_uv; q)``."""
    P = poset_from_words(u, v)
    lhs = rf_sum(free_gmaj(w) for w in linear_extensions(P))
    F = genfun_closed_form(P, var="q")
    full = RatFun.make(Polynomial.one(F.mode) - Polynomial.monomial(F.mode, (1,) * P.n))
    return lhs, full * F


def check_shuffle_identity(u: Sequence[int], v: Sequence[int]) -> bool:
    lhs, rhs = shuffle_sides(u, v)
    return rf_equal(lhs, rhs) and lhs.to_mode(cyclic_mode(len(u) + len(v))).is_zero()


def ppartition_suite(n: int, degree: int = 6) -> VerificationReport:
    """Stanley's formula for every two-chain poset and every single chain on ``n`` elements."""
    rep = VerificationReport("ppartition", {"n": n, "degree": degree}, "symbolic")
    with rep.timed():
        posets = [poset_from_words(u, v) for u, v in complementary_pairs(n)]
        posets += [ChainPoset([w]) for w in permutations(n)]
        for P in posets:
            lhs, rhs = stanley_series(P, degree), ppartitions_truncated(P, degree)
            rep.record(f"stanley{P}", lhs == rhs, lambda: {"formula": lhs, "enumeration": rhs})
    return rep


def shuffle_identity_suite(n: int) -> VerificationReport:
    rep = VerificationReport("shuffle-identity", {"n": n}, "symbolic")
    with rep.timed():
        for u, v in complementary_pairs(n):
            lhs, rhs = shuffle_sides(u, v)
            label = f"{render_word(u)} sh {render_word(v)}"
            rep.record(f"free[{label}]", rf_equal(lhs, rhs), lambda: {"lhs": lhs, "rhs": rhs})
            reduced = lhs.to_mode(cyclic_mode(n))
            rep.record(f"cyclic[{label}]", reduced.is_zero(), lambda: {"reduced": reduced})
    return rep
