"""Free Lie algebra membership tests for elements of the group algebra.

Two independent criteria are implemented:

* orthogonality: ``p`` is Lie iff ``<p, u sh v> = 0`` for all nonempty ``u, v``;
* Dynkin-Specht-Wever: a homogeneous ``p`` of degree n is Lie iff left-normed
  bracketing sends ``p`` to ``n p``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

import gmpy2

from .groupalg import GroupAlgebraElement, compare_at_points, compare_symbolic, draw_points, klyachko_element
from .perm import Permutation, render_word
from .ratfun import RatFun, rf_sum
from .report import VerificationReport, randomized_mode

Word = Tuple[int, ...]
WordSum = Dict[Word, object]


def shuffle_product(u: Sequence[int], v: Sequence[int]) -> WordSum:
    """Sum of all interleavings of ``u`` and ``v`` (letters must be distinct)."""
    u, v = tuple(u), tuple(v)
    if not u or not v:
        raise ValueError("shuffle of an empty word")
    if set(u) & set(v):
        raise ValueError(f"words {render_word(u)} and {render_word(v)} share letters")
    size = len(u) + len(v)
    out: WordSum = {}
    for pos in itertools.combinations(range(size), len(u)):
        pos_set = set(pos)
        iu, iv = iter(u), iter(v)
        out[tuple(next(iu) if k in pos_set else next(iv) for k in range(size))] = 1
    return out


def scalar_product(A: GroupAlgebraElement, S: WordSum) -> RatFun:
    """``<A, S>`` with words as an orthonormal basis; non-permutation words contribute 0."""
    terms = [A.coeffs[w] * c for w, c in S.items() if c and w in A.coeffs]
    return rf_sum(terms, A.mode)


def complementary_pairs(n: int, halve: bool = True) -> Iterator[Tuple[Word, Word]]:
    """Ordered pairs (u, v) splitting {1..n}: u-letter sets by size then lex, words lex.

    With ``halve`` only one of (u, v), (v, u) is produced, since the shuffle is commutative.
    """
    letters = range(1, n + 1)
    subsets = [c for r in range(1, n) for c in itertools.combinations(letters, r)]
    rank = {c: k for k, c in enumerate(subsets)}
    for S in subsets:
        comp = tuple(x for x in letters if x not in S)
        if halve and rank[comp] < rank[S]:
            continue
        for u in itertools.permutations(S):
            for v in itertools.permutations(comp):
                yield u, v


def is_lie_element(A: GroupAlgebraElement, method: str = "symbolic", points: int = 20, seed: int = 0,
                   suite: str = "lie") -> VerificationReport:
    n = A.n
    mode = "symbolic" if method == "symbolic" else randomized_mode(points, seed)
    pairs = list(complementary_pairs(n))
    rep = VerificationReport(suite, {"n": n, "ordered_pairs": 2 * len(pairs)}, mode)
    with rep.timed():
        if method == "symbolic":
            for u, v in pairs:
                val = scalar_product(A, shuffle_product(u, v))
                rep.record(f"<A,{render_word(u)} sh {render_word(v)}>", val.is_zero(), lambda: {"value": val})
        else:
            pts = draw_points(n, points, seed, probe=A.evaluate_at)
            for k, pt in enumerate(pts):
                vals = A.evaluate_at(pt)
                zero = gmpy2.mpq(0)
                for u, v in pairs:
                    total = sum((vals.get(w, zero) for w in shuffle_product(u, v)), zero)
                    rep.record(
                        f"<A,{render_word(u)} sh {render_word(v)}>@point{k}",
                        total == 0,
                        lambda: {"point": pt, "value": total},
                    )
    return rep


@lru_cache(maxsize=None)
def left_bracket_positions(n: int) -> Tuple[Tuple[Word, int], ...]:
    """Signed words of ``[[..[1,2],3],..,n]``; relabel positions to bracket any word."""
    terms: Dict[Word, int] = {(1,): 1}
    for x in range(2, n + 1):
        nxt: Dict[Word, int] = {}
        for w, c in terms.items():
            nxt[w + (x,)] = nxt.get(w + (x,), 0) + c
            nxt[(x,) + w] = nxt.get((x,) + w, 0) - c
        terms = {w: c for w, c in nxt.items() if c}
    return tuple(sorted(terms.items()))


def left_bracket(w: Sequence[int]) -> WordSum:
    """Expansion of ``[[..[w1,w2],..],wn]`` into words."""
    return {tuple(w[p - 1] for p in pos): c for pos, c in left_bracket_positions(len(w))}


def dynkin_left_bracketing(A: GroupAlgebraElement) -> GroupAlgebraElement:
    """Apply ``w -> [[..[w1,w2],..],wn]`` linearly to every coefficient of ``A``."""
    acc: Dict[Permutation, List[RatFun]] = {}
    for w, c in A.coeffs.items():
        for word, sign in left_bracket(w).items():
            acc.setdefault(Permutation._unchecked(word), []).append(c * sign)
    return GroupAlgebraElement(A.n, {s: rf_sum(terms) for s, terms in acc.items()})


def check_dynkin(A: GroupAlgebraElement, method: str = "symbolic", points: int = 20, seed: int = 0,
                 suite: str = "dynkin") -> VerificationReport:
    """Dynkin criterion: ``dynkin(A) == n * A`` coefficient-wise."""
    n = A.n
    mode = "symbolic" if method == "symbolic" else randomized_mode(points, seed)
    rep = VerificationReport(suite, {"n": n}, mode)
    with rep.timed():
        if method == "symbolic":
            compare_symbolic(rep, "dynkin(A)=nA", dynkin_left_bracketing(A), A.scale(n))
        else:
            pts = draw_points(n, points, seed, probe=A.evaluate_at)

            def bracketed(pt):
                vals = A.evaluate_at(pt)
                out: Dict[Permutation, object] = {}
                for w, val in vals.items():
                    for word, sign in left_bracket(w).items():
                        out[word] = out.get(word, 0) + sign * val
                return {Permutation._unchecked(w): v for w, v in out.items() if v != 0}

            compare_at_points(rep, "dynkin(A)=nA", bracketed, lambda pt: {s: n * v for s, v in A.evaluate_at(pt).items()}, pts)
    return rep


def bracket_element(w: Sequence[int], coeff=1) -> GroupAlgebraElement:
    """The left-normed bracket of the letters of ``w`` as a group algebra element."""
    n = len(w)
    el = GroupAlgebraElement(n)
    mode = el.mode
    return GroupAlgebraElement(n, {s: RatFun.constant(mode, Fraction(coeff) * c) for s, c in left_bracket(w).items()})


def lie_suite(n: int, method: str = "symbolic", points: int = 20, seed: int = 0) -> VerificationReport:
    return is_lie_element(klyachko_element(n), method, points, seed)


def dynkin_suite(n: int, method: str = "symbolic", points: int = 20, seed: int = 0) -> VerificationReport:
    return check_dynkin(klyachko_element(n), method, points, seed)
