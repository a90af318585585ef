import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klyachko.perm import Permutation, permutations
from klyachko.ring import Polynomial
from klyachko.theta import (
    EMPTY,
    TruncatedSeries,
    check_product_theorem,
    csigma_brute,
    csigma_closed,
    increasing_factorizations,
    product_expansion,
    series_mode,
    star_product,
    theta_closed,
    theta_suite,
)


def P(text):
    return Permutation.parse(text)


def mono(N, exps):
    return Polynomial.monomial(series_mode(N), tuple(exps) + (0,) * (N - len(exps)))


class TestStarProduct:
    def test_unit_coefficients(self):
        A = TruncatedSeries.monomial(4, 5, P("132"))
        B = TruncatedSeries.monomial(4, 5, P("1"))
        prod = star_product(A, B)
        assert set(prod.coeffs) == {P("1324"), P("1423"), P("1432"), P("2431")}
        assert all(c == Polynomial.one(series_mode(4)) for c in prod.coeffs.values())

    def test_relabelled_coefficients(self):
        A = TruncatedSeries.monomial(4, 12, P("132"), mono(4, (2, 2, 1)))
        B = TruncatedSeries.monomial(4, 12, P("1"), mono(4, (3,)))
        prod = star_product(A, B)
        assert prod.coeffs == {
            P("1324"): mono(4, (2, 2, 1, 3)),
            P("1423"): mono(4, (2, 2, 3, 1)),
            P("1432"): mono(4, (2, 3, 2, 1)),
            P("2431"): mono(4, (3, 2, 2, 1)),
        }

    def test_empty_is_unit(self):
        A = theta_closed(3, 3)
        eps = TruncatedSeries.monomial(3, 3, EMPTY)
        assert star_product(eps, A) == A
        assert star_product(A, eps) == A

    def test_overflow_sets_flag(self):
        A = TruncatedSeries.monomial(2, 3, P("12"))
        prod = star_product(A, A)
        assert prod.truncated and not prod.coeffs

    def test_incompatible_bounds(self):
        with pytest.raises(ValueError):
            star_product(TruncatedSeries(2, 3), TruncatedSeries(3, 3))

    def test_rendering_order(self):
        text = product_expansion(2, 2).render().splitlines()
        assert text[0] == "(1) * ()"
        assert text[1] == "(1 + x1 + x1^2) * 1"
        assert text[-1].endswith(" * 21")


def small_series(N=3, D=4):
    mode = series_mode(N)

    def build(entries):
        coeffs = {}
        for perm, e, c in entries:
            exps = tuple(e[: len(perm)]) + (0,) * (N - len(perm))
            coeffs[perm] = coeffs.get(perm, Polynomial.zero(mode)) + Polynomial.monomial(mode, exps, c)
        return TruncatedSeries(N, D, coeffs)

    perm = st.integers(0, N).flatmap(lambda k: st.permutations(list(range(1, k + 1)))).map(Permutation)
    entry = st.tuples(perm, st.tuples(*[st.integers(0, 2)] * N), st.integers(-3, 3))
    return st.lists(entry, max_size=4).map(build)


@settings(max_examples=40, deadline=None)
@given(small_series(), small_series(), small_series())
def test_star_associative(A, B, C):
    assert star_product(star_product(A, B), C) == star_product(A, star_product(B, C))


class TestCoefficients:
    def test_closed_single(self):
        assert str(csigma_closed(P("1"), 1, 3)) == "1 + x1 + x1^2 + x1^3"

    def test_closed_descent(self):
        assert str(csigma_closed(P("21"), 2, 3)) == "x2 + x2^2 + x1*x2^2 + x2^3"

    def test_closed_empty(self):
        assert csigma_closed(EMPTY, 0, 4) == Polynomial.one(series_mode(0))

    def test_brute(self):
        assert str(csigma_brute(P("21"), 3)) == "x2 + x2^2 + x1*x2^2 + x2^3"
        assert str(csigma_brute(P("12"), 2)) == "1 + x1 + x1^2 + x1*x2"
        assert csigma_brute(EMPTY, 7) == Polynomial.one(series_mode(0))

    def test_factorizations(self):
        assert list(increasing_factorizations(P("12"))) == [[(1, 2)], [(1,), (2,)]]
        assert list(increasing_factorizations(P("21"))) == [[(2,), (1,)]]

    @pytest.mark.parametrize("n", range(0, 5))
    def test_closed_equals_brute(self, n):
        for s in permutations(n):
            assert csigma_closed(s, n, 6) == csigma_brute(s, 6)

    def test_identity_n3(self):
        assert str(theta_closed(3, 2).coefficient(P("123"))) == "1 + x1 + x1^2 + x1*x2"


class TestProductExpansion:
    def test_n1(self):
        th = product_expansion(1, 3)
        assert th.coefficient(EMPTY) == Polynomial.one(series_mode(1))
        assert str(th.coefficient(P("1"))) == "1 + x1 + x1^2 + x1^3"

    def test_descent_coefficient(self):
        assert str(product_expansion(2, 3).coefficient(P("21"))) == "x2 + x2^2 + x1*x2^2 + x2^3"

    @pytest.mark.parametrize("N, D", [(2, 4), (3, 5)])
    def test_theorem(self, N, D):
        assert check_product_theorem(N, D)

    def test_monotone_truncation(self):
        big = product_expansion(3, 5)
        assert big.retruncate(3, 3) == product_expansion(3, 3)
        assert big.retruncate(2, 4) == product_expansion(2, 4)
        assert theta_closed(3, 5).retruncate(2, 2) == theta_closed(2, 2)

    def test_suite(self):
        rep = theta_suite(3, 4)
        assert rep.passed and rep.params == {"max_size": 3, "degree": 4}
