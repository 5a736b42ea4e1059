from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mnatcomp.setcore import (
    all_permutation_vectors,
    as_fraction,
    char_vector,
    check_flag,
    elements_of,
    flag_of_ordering,
    flag_of_permutation,
    flag_vector,
    format_rational,
    format_subset,
    mask_of,
    mask_of_vector,
    ordering_of_flag,
    pairing,
    parse_rational,
    permutation_of_flag,
    scale_to_integers,
    submasks,
    sum_over,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@given(st.sets(st.integers(1, 12)))
def test_mask_roundtrip(S):
    assert elements_of(mask_of(S)) == sorted(S)


@given(st.integers(0, (1 << 8) - 1))
def test_char_vector_roundtrip(X):
    assert mask_of_vector(char_vector(X, 8)) == X


def test_mask_rejects_zero_element():
    with pytest.raises(ValueError):
        mask_of([0, 1])


def test_mask_of_vector_rejects_non_binary():
    with pytest.raises(ValueError):
        mask_of_vector((0, 2))


def test_format_subset():
    assert format_subset(0) == "{}"
    assert format_subset(0b101) == "{1,3}"


@given(st.integers(0, 255))
def test_submasks_are_all_subsets(X):
    subs = list(submasks(X))
    assert len(subs) == len(set(subs)) == 1 << X.bit_count()
    assert all(S & ~X == 0 for S in subs)


def test_sum_over_and_pairing():
    x = (3, -1, 4)
    assert sum_over(x, 0) == 0
    assert sum_over(x, 0b110) == 3
    assert pairing((Fraction(1, 2), 0, 1), x) == Fraction(11, 2)


@given(rationals)
def test_rational_text_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_rational_formats():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(4) == "4"
    assert parse_rational(" 7/3 ") == Fraction(7, 3)
    for bad in ("1/0", "x", "1.5.2", 2.5):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_floats_are_refused():
    with pytest.raises(TypeError):
        as_fraction(0.5)


@given(st.lists(rationals, min_size=1, max_size=6))
def test_scale_to_integers(w):
    a, d = scale_to_integers(w)
    assert d > 0
    assert all(Fraction(ai, d) == q for ai, q in zip(a, w))
    # d is minimal: no proper divisor clears every denominator
    for p in range(2, d + 1):
        if d % p == 0:
            assert any(Fraction(q * (d // p)).denominator != 1 for q in w)
            break


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_permutation_flag_roundtrip(n):
    for v in all_permutation_vectors(n):
        flag = flag_of_permutation(v)
        check_flag(flag, n)
        assert permutation_of_flag(flag, n) == v
        assert flag_vector(flag, n) == v


@pytest.mark.parametrize("n", [2, 3, 4])
def test_ordering_flag_roundtrip(n):
    for order in permutations(range(1, n + 1)):
        assert ordering_of_flag(flag_of_ordering(order), n) == order


def test_flag_of_ordering_reads_prefixes():
    assert flag_of_ordering((2, 3, 1)) == (0b010, 0b110, 0b111)
    assert permutation_of_flag((0b010, 0b110, 0b111), 3) == (1, 3, 2)


@pytest.mark.parametrize("flag", [(0b1, 0b1, 0b111), (0b11, 0b111, 0b111), (0b1, 0b110, 0b111),
                                  (0b1, 0b11)])
def test_check_flag_rejects(flag):
    with pytest.raises(ValueError):
        check_flag(flag, 3)


def test_flag_of_permutation_rejects_non_permutation():
    with pytest.raises(ValueError):
        flag_of_permutation((1, 1, 3))
