import pytest
from hypothesis import given
from hypothesis import strategies as st

from klyachko.perm import (
    Permutation,
    compose,
    cycle_power,
    descent_set,
    descent_stats,
    is_subsequence,
    major_index,
    permutations,
    standardize,
)

from strategies import permutations_of


@pytest.mark.parametrize(
    "w, D, maj, Dbar",
    [((1, 3, 2), {2}, 2, {2, 3}), ((3, 2, 1), {1, 2}, 3, {1, 2}), ((1, 2, 3), set(), 0, {3})],
)
def test_descent_stats(w, D, maj, Dbar):
    s = descent_stats(w)
    assert (s.D, s.maj, s.Dbar, s.dbar, s.d) == (D, maj, Dbar, len(Dbar), len(D))


def test_descent_stats_empty():
    with pytest.raises(ValueError):
        descent_stats(())


def test_compose_example():
    assert compose(Permutation.parse("231"), Permutation.parse("132")) == Permutation.parse("213")


def test_compose_mismatch():
    with pytest.raises(ValueError):
        compose((1, 2), (1, 2, 3))


def test_cycle_powers():
    assert cycle_power(3, 1) == (2, 3, 1)
    assert cycle_power(3, 0) == (1, 2, 3)
    assert cycle_power(3, -1) == (3, 1, 2)
    assert compose(cycle_power(3, 1), cycle_power(3, 2)).is_identity()


@pytest.mark.parametrize("n", range(1, 8))
def test_gamma_order(n):
    g = cycle_power(n, 1)
    assert (g**n).is_identity()
    assert cycle_power(n, 1)(n) == 1


def test_standardize():
    assert standardize((5, 7, 1, 6)) == (2, 4, 1, 3)
    assert standardize((3, 8, 2)) == (2, 3, 1)
    with pytest.raises(ValueError):
        standardize((1, 1))


@given(permutations_of(6))
def test_standardize_fixes_permutations(w):
    assert standardize(w) == w


@given(st.lists(st.integers(1, 30), unique=True, min_size=1, max_size=8))
def test_major_index_is_descent_sum(w):
    assert major_index(w) == sum(descent_set(w))


@pytest.mark.parametrize("n", range(2, 7))
def test_circular_descents_single_only_on_gamma_powers(n):
    powers = {cycle_power(n, i) for i in range(n)}
    for t in permutations(n):
        dbar = descent_stats(t).dbar
        if t in powers:
            assert dbar == 1
        else:
            assert 2 <= dbar <= n - 1


@given(permutations_of(5), permutations_of(5), permutations_of(5))
def test_compose_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert compose(a, a.inverse()).is_identity()


def test_invalid_permutation():
    with pytest.raises(ValueError):
        Permutation((1, 3))


def test_rendering_and_parsing():
    assert str(Permutation.parse("231")) == "231"
    big = Permutation(list(range(10, 0, -1)))
    assert str(big) == "10,9,8,7,6,5,4,3,2,1"
    assert Permutation.parse(str(big)) == big
    assert str(Permutation(())) == "()"


def test_lexicographic_enumeration():
    assert [str(p) for p in permutations(3)] == ["123", "132", "213", "231", "312", "321"]


def test_subsequence():
    assert is_subsequence((1, 3), (1, 2, 3))
    assert not is_subsequence((3, 1), (1, 2, 3))
