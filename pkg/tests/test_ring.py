from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from klyachko.ring import (
    ConstraintError,
    DimensionError,
    IncompatibleModeError,
    NotDivisible,
    PoleError,
    Polynomial,
    RingMode,
    apply_permutation,
    canonicalize_exponents,
    cyclotomic_polynomial,
    evaluate,
    exact_div,
    poly_arith,
    poly_exact_div,
)
from klyachko.perm import compose

from strategies import cyclic_points, exponents, permutations_of, polynomials

C2, C3 = RingMode(2), RingMode(3)
F2, F3 = RingMode.free(2, "q"), RingMode.free(3, "q")


def poly(mode, terms):
    return Polynomial(mode, terms)


def q(mode, i):
    return Polynomial.variable(mode, i)


class TestCanonicalize:
    def test_subtracts_last_entry(self):
        assert canonicalize_exponents((2, 0, 1), C3) == (1, -1, 0)

    def test_inverse_of_last_variable(self):
        assert canonicalize_exponents((0, 0, -1), C3) == (1, 1, 0)

    def test_free_mode_is_identity(self):
        assert canonicalize_exponents((2, 0, 1), F3) == (2, 0, 1)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            canonicalize_exponents((1, 2), C3)

    @given(exponents(4, -5, 5))
    def test_idempotent(self, e):
        mode = RingMode(4)
        once = canonicalize_exponents(e, mode)
        assert canonicalize_exponents(once, mode) == once
        assert once[-1] == 0

    @given(exponents(3, -4, 4), st.integers(-3, 3))
    def test_cosets_of_all_ones(self, e, k):
        shifted = tuple(x + k for x in e)
        assert canonicalize_exponents(shifted, C3) == canonicalize_exponents(e, C3)


class TestArithmetic:
    def test_difference_of_squares(self):
        a = 1 - q(F2, 1)
        b = 1 + q(F2, 1)
        assert poly_arith(a, b, "multiply") == 1 - q(F2, 1) ** 2

    def test_full_product_is_one(self):
        assert q(C3, 1) * q(C3, 2) * q(C3, 3) == Polynomial.one(C3)

    def test_telescoping_sum(self):
        a = 1 - q(F2, 1)
        b = q(F2, 1) - q(F2, 1) * q(F2, 2)
        assert poly_arith(a, b, "add") == 1 - q(F2, 1) * q(F2, 2)

    def test_mode_mismatch(self):
        with pytest.raises(IncompatibleModeError):
            q(C2, 1) + q(F2, 1)

    def test_zero_terms_dropped(self):
        p = poly(F2, {(1, 0): 2, (0, 1): 0})
        assert p.terms == {(1, 0): 2}
        assert (p - p).terms == {}

    def test_fraction_coefficients_normalize(self):
        p = poly(F2, {(1, 0): Fraction(4, 2)})
        assert type(p.terms[(1, 0)]) is int

    @settings(max_examples=60)
    @given(polynomials(C3), polynomials(C3), polynomials(C3))
    def test_ring_laws_cyclic(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a

    @settings(max_examples=60)
    @given(polynomials(F3), polynomials(F3), polynomials(F3))
    def test_ring_laws_free(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)

    def test_negative_power_of_monomial(self):
        assert q(F2, 1) ** -2 * q(F2, 1) ** 2 == Polynomial.one(F2)

    def test_negative_power_of_binomial_rejected(self):
        with pytest.raises((ValueError, ArithmeticError)):
            (1 - q(F2, 1)) ** -1


class TestExactDivision:
    def test_quotient(self):
        assert poly_exact_div(1 - q(F2, 1) ** 2, 1 - q(F2, 1)) == 1 + q(F2, 1)

    def test_not_divisible(self):
        assert poly_exact_div(1 - q(F2, 1) * q(F2, 2), 1 - q(F2, 1)) is None
        with pytest.raises(NotDivisible):
            exact_div(1 - q(F2, 1) * q(F2, 2), 1 - q(F2, 1))

    def test_zero_dividend(self):
        assert poly_exact_div(Polynomial.zero(F2), 1 - q(F2, 1)).is_zero()

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            poly_exact_div(q(F2, 1), Polynomial.zero(F2))

    def test_cyclic_mode(self):
        assert poly_exact_div(1 - q(C3, 1) ** 2, 1 - q(C3, 1)) == 1 + q(C3, 1)
        # q3^-1 = q1 q2, so (1 - q1 q2) divides (1 - q3^-2)
        assert poly_exact_div(1 - q(C3, 3) ** -2, 1 - q(C3, 1) * q(C3, 2)) == 1 + q(C3, 1) * q(C3, 2)

    @settings(max_examples=60)
    @given(polynomials(C3, 5), polynomials(C3, 3))
    def test_product_divides_back(self, a, b):
        if b.is_zero():
            return
        assert poly_exact_div(a * b, b) == a


class TestPermutationAction:
    def test_action_on_numerator(self):
        # the action of 231 sends q1 q3 to q2 q1
        assert apply_permutation(q(C3, 1) * q(C3, 3), (2, 3, 1)) == q(C3, 2) * q(C3, 1)

    def test_identity(self):
        p = 1 - q(C3, 1) + 3 * q(C3, 2) ** 2
        assert apply_permutation(p, (1, 2, 3)) == p

    def test_constants_fixed(self):
        assert apply_permutation(Polynomial.one(C3), (2, 3, 1)) == Polynomial.one(C3)

    def test_degree_mismatch(self):
        with pytest.raises(DimensionError):
            apply_permutation(q(C3, 1), (2, 1))

    @given(polynomials(RingMode(4)), permutations_of(4), permutations_of(4))
    def test_group_action(self, p, s, t):
        assert apply_permutation(apply_permutation(p, s), t) == apply_permutation(p, compose(t, s))

    @given(polynomials(RingMode(4)), permutations_of(4), cyclic_points(4))
    def test_action_matches_substitution(self, p, s, pt):
        assert evaluate(apply_permutation(p, s), pt) == evaluate(p, tuple(pt[x - 1] for x in s))


class TestEvaluate:
    def test_full_product(self):
        assert evaluate(q(C2, 1) * q(C2, 2), (2, Fraction(1, 2))) == 1

    def test_binomial(self):
        assert evaluate(1 - q(C2, 1), (3, Fraction(1, 3))) == -2

    def test_last_variable_canonical(self):
        p = q(C2, 2)
        assert p.terms == {(-1, 0): 1}
        assert evaluate(p, (2, Fraction(1, 2))) == Fraction(1, 2)

    def test_constraint(self):
        with pytest.raises(ConstraintError):
            evaluate(q(C2, 1), (2, 3))

    def test_pole(self):
        with pytest.raises(PoleError):
            evaluate(q(F2, 1) ** -1, (0, 1))

    @settings(max_examples=50)
    @given(polynomials(C3), polynomials(C3), cyclic_points(3))
    def test_homomorphism_cyclic(self, a, b, pt):
        assert evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt)
        assert evaluate(a + b, pt) == evaluate(a, pt) + evaluate(b, pt)

    @settings(max_examples=50)
    @given(
        polynomials(F3),
        polynomials(F3),
        st.tuples(*[st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool)] * 3),
    )
    def test_homomorphism_free(self, a, b, pt):
        assert evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt)

    @given(exponents(3), st.integers(-2, 2), cyclic_points(3))
    def test_cyclic_soundness(self, e, k, pt):
        raw = Polynomial.monomial(C3, tuple(x + k for x in e))
        assert evaluate(raw, pt) == evaluate(Polynomial.monomial(C3, e), pt)


class TestRendering:
    def test_graded_lex(self):
        p = 1 - q(C3, 1) + q(C3, 1) * q(C3, 2) ** 2 - Fraction(1, 2) * q(C3, 2)
        assert str(p) == "1 - q1 - 1/2*q2 + q1*q2^2"

    def test_negative_exponent(self):
        assert str(q(C2, 2)) == "q1^-1"

    def test_zero(self):
        assert str(Polynomial.zero(C2)) == "0"


class TestCyclotomicPolynomial:
    @pytest.mark.parametrize(
        "n, coeffs",
        [(1, {0: -1, 1: 1}), (4, {0: 1, 2: 1}), (6, {0: 1, 1: -1, 2: 1}), (12, {0: 1, 2: -1, 4: 1})],
    )
    def test_known(self, n, coeffs):
        assert {e[0]: c for e, c in cyclotomic_polynomial(n).terms.items()} == coeffs

    def test_rendering(self):
        assert str(cyclotomic_polynomial(1)) == "-1 + x1"

    @pytest.mark.parametrize("n", range(1, 13))
    def test_product_over_divisors(self, n):
        mode = cyclotomic_polynomial(1).mode
        prod = Polynomial.one(mode)
        for d in range(1, n + 1):
            if n % d == 0:
                prod = prod * cyclotomic_polynomial(d)
        assert prod == Polynomial.monomial(mode, (n,)) - 1
