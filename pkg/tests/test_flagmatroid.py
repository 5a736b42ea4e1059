import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mnatcomp.compression import DomainError, compress
from mnatcomp.discrete import DiscreteFn, vgm_from_setfunction
from mnatcomp.flagmatroid import (
    FlagMatroid,
    Matroid,
    NonGenericError,
    cell_sub_permutohedron,
    generic_flag,
    is_base_family,
    is_flag_matroid,
    permutohedron_points,
    rank_from_bases,
    require_vgm,
    strip_flag_matroid,
    strip_report,
    uniform_matroid,
    verify_permutohedron_dom,
)
from mnatcomp.generate import random_vgm
from mnatcomp.setcore import flag_vector, permutation_of_flag
from mnatcomp.strips import maximal_cells, strip_decomposition
from mnatcomp.submodular import SetFunction

from oracles import compress_bruteforce, is_matroid_base_family, is_quotient, permutohedron_lattice

seeds = st.integers(0, 10**6)


def vgm(n, table):
    return vgm_from_setfunction(SetFunction.from_callable(n, lambda X: table.get(X, 0)))


ZERO3 = vgm(3, {})
MICRO = vgm(2, {0b01: 1})
# f({1}) = f({1,2}) = f({1,3}) = -1, zero elsewhere
THREE = vgm(3, {0b001: -1, 0b011: -1, 0b101: -1})


def test_base_family_examples():
    assert is_base_family({0b01, 0b10})
    assert not is_base_family({0b0011, 0b1100})
    assert is_base_family({0})
    assert not is_base_family({0b1, 0b11})
    with pytest.raises(ValueError):
        is_base_family(set())


@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1), min_size=1))))
def test_base_family_against_rank_oracle(case):
    n, B = case
    assert is_base_family(B) == is_matroid_base_family(B, n)


def test_rank_from_bases_examples():
    assert rank_from_bases({0b01, 0b10}, 2).values == (0, 1, 1, 1)
    assert rank_from_bases({0}, 2).values == (0, 0, 0, 0)
    r = rank_from_bases({0b011}, 3)
    assert all(r(X) == (X & 0b011).bit_count() for X in range(8))


def test_flag_matroid_examples():
    assert is_flag_matroid([uniform_matroid(k, 3) for k in range(4)])
    chain = [uniform_matroid(0, 2), Matroid.from_bases(2, {0b01}), uniform_matroid(2, 2)]
    assert is_flag_matroid(chain)
    FlagMatroid(tuple(chain))
    assert not is_flag_matroid([Matroid.from_bases(3, {0b001}), Matroid.from_bases(3, {0b110})])
    with pytest.raises(ValueError):
        FlagMatroid((uniform_matroid(1, 2), uniform_matroid(1, 2)))
    with pytest.raises(ValueError):
        Matroid.from_bases(4, {0b0011, 0b1100})


def test_flag_matroid_requires_strong_maps():
    ms = (uniform_matroid(0, 3), Matroid.from_bases(3, {0b001}),
          Matroid.from_bases(3, {0b110}), uniform_matroid(3, 3))
    with pytest.raises(ValueError, match="strong map"):
        FlagMatroid(ms)


def test_zero_vgm_single_uniform_strip():
    (s,) = strip_decomposition(ZERO3)
    fm = strip_flag_matroid(s)
    assert fm.is_uniform()
    assert set(s.cell.points) == set(permutohedron_points(3))


def test_micro_instance_strip():
    r = compress(MICRO, check=False)
    (s,) = strip_decomposition(MICRO, r)
    fm = strip_flag_matroid(s)
    assert [m.bases for m in fm.matroids] == [uniform_matroid(a, 2).bases for a in range(3)]
    # the full report still flags the exchange axiom first
    rep = strip_report(MICRO)
    assert rep.failure == "exchange_axiom" and not rep.ok


def test_three_element_example_is_a_single_strip():
    # Every optimal split puts element 1 first, so the compression is the
    # linear function 1 - x_1 on the permutohedron and there is one cell.
    fhat = compress_bruteforce(THREE)
    assert all(v == 1 - x[0] for x, v in fhat.items())
    rep = strip_report(THREE)
    assert rep.ok
    (s,) = rep.strips
    assert s.witness == (-1, 0, 0)
    assert s.levels == {0: [0], 1: [0b001, 0b010, 0b100], 2: [0b011, 0b101, 0b110], 3: [0b111]}


def test_generic_flag_examples():
    flag = generic_flag(ZERO3, (3, 2, 1))
    assert flag == (0b001, 0b011, 0b111)
    assert permutation_of_flag(flag, 3) == (3, 2, 1)
    assert generic_flag(MICRO, (0, 0)) == (0b10, 0b11)
    with pytest.raises(NonGenericError) as exc:
        generic_flag(vgm(2, {}), (0, 0))
    assert exc.value.level == 1 and exc.value.tied == (0b01, 0b10)


@given(seeds, st.integers(2, 4), st.lists(st.integers(-50, 50), min_size=4, max_size=4))
def test_generic_flag_gives_permutation_vector(seed, n, w):
    F = random_vgm(n, random.Random(seed))
    try:
        flag = generic_flag(F, w[:n])
    except NonGenericError:
        return
    assert permutation_of_flag(flag, n) == flag_vector(flag, n)
    # the compression point at w is the permutation vector of the flag
    assert compress(F).fhat(flag_vector(flag, n)) < float("inf")


def test_require_vgm():
    with pytest.raises(DomainError):
        require_vgm(DiscreteFn(1, {(0,): 0}))
    with pytest.raises(DomainError):
        require_vgm(DiscreteFn(1, {(0,): 1, (1,): 0}))


@given(seeds, st.integers(2, 4))
def test_structure_on_random_vgms(seed, n):
    F = random_vgm(n, random.Random(seed))
    rep = strip_report(F)
    assert rep.ok, rep.failure
    r = compress(F)
    assert set(r.fhat.entries) == permutohedron_lattice(n)
    assert verify_permutohedron_dom(F, r)
    for s in strip_decomposition(F, r):
        ms = strip_flag_matroid(s).matroids
        for a, m in enumerate(ms):
            assert is_matroid_base_family(m.bases, n) and m.rank_value == a
        for lo, hi in zip(ms, ms[1:]):
            assert is_quotient(hi.rank.values, lo.rank.values, n)
    for c in maximal_cells(r.fhat):
        ok, verts = cell_sub_permutohedron(c)
        assert ok and verts


def test_permutohedron_dom_with_hull_check():
    assert verify_permutohedron_dom(random_vgm(4, random.Random(7)), hull_check=True)


def test_report_flags_non_vgm_domain():
    rep = strip_report(DiscreteFn(2, {(0, 0): 0, (1, 0): 0, (0, 1): 0}))
    assert rep.failure == "vgm_domain"
