"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from klyachko.groupalg import GroupAlgebraElement, cyclic_mode
from klyachko.perm import Permutation
from klyachko.ratfun import RatFun
from klyachko.ring import Polynomial, RingMode

coefficients = st.one_of(
    st.integers(-5, 5),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
).filter(lambda c: c != 0)


def exponents(n, lo=-3, hi=3):
    return st.tuples(*[st.integers(lo, hi)] * n)


def polynomials(mode: RingMode, max_terms=8, lo=-3, hi=3):
    return st.dictionaries(exponents(mode.n, lo, hi), coefficients, max_size=max_terms).map(
        lambda terms: Polynomial(mode, terms)
    )


def factor_vectors(mode: RingMode):
    """Exponent vectors whose (1 - q^m) factor is nonzero in the mode."""
    vec = exponents(mode.n, 0, 2) if not mode.cyclic else exponents(mode.n, -1, 2)
    return vec.filter(lambda m: Polynomial.monomial(mode, m) != Polynomial.one(mode))


def ratfuns(mode: RingMode, max_terms=3, max_factors=2):
    lo = -2 if mode.cyclic else 0
    return st.builds(
        lambda num, facs: RatFun.make(num, facs),
        polynomials(mode, max_terms, lo, 2),
        st.lists(factor_vectors(mode), max_size=max_factors),
    )


def permutations_of(n):
    return st.permutations(list(range(1, n + 1))).map(Permutation)


def elements(n, max_terms=3):
    mode = cyclic_mode(n)
    return st.dictionaries(permutations_of(n), ratfuns(mode, 2, 2), max_size=max_terms).map(
        lambda d: GroupAlgebraElement(n, d)
    )


def cyclic_points(n):
    """Product-1 points with coordinates a/b, a, b in [2, 50]."""
    coord = st.builds(Fraction, st.integers(2, 50), st.integers(2, 50))
    return st.lists(coord, min_size=n - 1, max_size=n - 1).map(lambda xs: tuple(xs) + (1 / _prod(xs),))


def _prod(xs):
    out = Fraction(1)
    for x in xs:
        out *= x
    return out
