import pytest

from klyachko.groupalg import cyclic_mode
from klyachko.lie import complementary_pairs, shuffle_product
from klyachko.perm import Permutation, permutations
from klyachko.ppart import (
    ChainPoset,
    check_shuffle_identity,
    check_stanley_formula,
    free_gmaj,
    genfun_closed_form,
    linear_extensions,
    poset_from_words,
    ppartition_suite,
    ppartitions_truncated,
    shuffle_identity_suite,
    shuffle_sides,
)
from klyachko.ratfun import parse_ratfun, rf_equal
from klyachko.ring import RingMode
from klyachko.series import expand


class TestPoset:
    def test_from_words(self):
        assert poset_from_words((1,), (2, 3)).chains == ((1,), (2, 3))
        assert poset_from_words((2, 1), (3,)).chains == ((2, 1), (3,))
        assert str(poset_from_words((1, 3), (2,))) == "[1 3][2]"

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            poset_from_words((1, 2), (2, 3))

    def test_coverage_rejected(self):
        with pytest.raises(ValueError):
            ChainPoset([(1,), (3,)])

    def test_labelling_must_be_identity(self):
        ChainPoset([(1, 2)], labelling=(1, 2))
        with pytest.raises(ValueError):
            ChainPoset([(1, 2)], labelling=(2, 1))


class TestLinearExtensions:
    def test_antichain(self):
        assert linear_extensions(ChainPoset([(1,), (2,)])) == [(1, 2), (2, 1)]

    def test_chain_and_point(self):
        assert [str(w) for w in linear_extensions(ChainPoset([(1, 2), (3,)]))] == ["123", "132", "312"]

    def test_single_chain(self):
        assert linear_extensions(ChainPoset([(3, 1, 2)])) == [Permutation((3, 1, 2))]

    @pytest.mark.parametrize("n", range(2, 6))
    def test_equal_shuffles(self, n):
        for u, v in complementary_pairs(n, halve=False):
            assert set(linear_extensions(poset_from_words(u, v))) == set(shuffle_product(u, v))


class TestClosedForm:
    def test_increasing_chain(self):
        mode = RingMode.free(2, "x")
        assert genfun_closed_form(ChainPoset([(1, 2)])) == parse_ratfun("1/((1 - x1)*(1 - x1*x2))", mode)

    def test_decreasing_chain(self):
        mode = RingMode.free(2, "x")
        assert genfun_closed_form(ChainPoset([(2, 1)])) == parse_ratfun("x2/((1 - x2)*(1 - x1*x2))", mode)

    def test_antichain(self):
        mode = RingMode.free(2, "x")
        assert genfun_closed_form(ChainPoset([(1,), (2,)])) == parse_ratfun("1/((1 - x1)*(1 - x2))", mode)


class TestBruteForce:
    def test_weak_chain(self):
        assert str(ppartitions_truncated(ChainPoset([(1, 2)]), 2)) == "1 + x1 + x1^2 + x1*x2"

    def test_strict_chain(self):
        assert str(ppartitions_truncated(ChainPoset([(2, 1)]), 1)) == "x2"

    def test_degree_zero(self):
        assert str(ppartitions_truncated(ChainPoset([(1, 2), (3,)]), 0)) == "1"
        assert ppartitions_truncated(ChainPoset([(2, 1)]), 0).is_zero()

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_closed_form_expansion(self, n):
        for u, v in complementary_pairs(n):
            P = poset_from_words(u, v)
            assert expand(genfun_closed_form(P), 6) == ppartitions_truncated(P, 6)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_single_chains_closed_form(self, n):
        for w in permutations(n):
            P = ChainPoset([w])
            assert expand(genfun_closed_form(P), 8) == ppartitions_truncated(P, 8)


class TestStanley:
    def test_antichain(self):
        assert check_stanley_formula(ChainPoset([(1,), (2,)]), 4)

    def test_two_chain(self):
        assert check_stanley_formula(poset_from_words((1,), (2, 3)), 6)

    def test_single_chain(self):
        assert check_stanley_formula(ChainPoset([(3, 1, 2)]), 6)

    def test_suite(self):
        assert ppartition_suite(3).passed


class TestShuffleIdentity:
    def test_n2(self):
        lhs, rhs = shuffle_sides((1,), (2,))
        mode = RingMode.free(2, "q")
        assert rf_equal(lhs, parse_ratfun("(1 - q1*q2)/((1 - q1)*(1 - q2))", mode))
        assert rf_equal(lhs, rhs)
        assert lhs.to_mode(cyclic_mode(2)).is_zero()

    @pytest.mark.parametrize("u, v", [((1, 2), (3,)), ((2, 1), (3,)), ((3,), (1, 2))])
    def test_examples(self, u, v):
        assert check_shuffle_identity(u, v)

    def test_free_gmaj_reduces_to_gmaj(self):
        from klyachko.groupalg import gmaj

        for s in permutations(4):
            assert free_gmaj(s).to_mode(cyclic_mode(4)) == gmaj(s)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_all_splits(self, n):
        assert shuffle_identity_suite(n).passed
