import itertools

import pytest
from hypothesis import given, strategies as st

from extcontent.errors import DomainError
from extcontent.subsets import SubsetIndex, binomial, k_subsets, parse_subset, rank, unrank

from conftest import pascal


def test_three_choose_two_order():
    assert [s.elements for s in k_subsets(3, 2)] == [(1, 2), (1, 3), (2, 3)]


def test_empty_subset():
    subs = k_subsets(4, 0)
    assert len(subs) == 1
    assert subs[0].elements == () and subs[0].rank == 0


def test_five_choose_three_matches_bitmask_enumeration():
    brute = sorted(
        tuple(i + 1 for i in range(5) if mask >> i & 1)
        for mask in range(1 << 5)
        if bin(mask).count("1") == 3
    )
    got = [s.elements for s in k_subsets(5, 3)]
    assert got == brute
    assert len(got) == 10 and got[0] == (1, 2, 3) and got[-1] == (3, 4, 5)


def test_rank_unrank_examples():
    assert rank(SubsetIndex(3, (1, 2))) == 0
    assert unrank(3, 2, 2).elements == (2, 3)
    assert rank(unrank(8, 4, 37)) == 37


def test_round_trip_all_70():
    for r in range(70):
        assert rank(unrank(8, 4, r)) == r


@pytest.mark.parametrize("n", range(0, 13))
def test_exhaustive_small(n):
    table = pascal(12)
    for k in range(n + 1):
        subs = k_subsets(n, k)
        assert len(subs) == binomial(n, k) == table[n][k]
        for a, b in zip(subs, subs[1:]):
            assert a.elements < b.elements
        for r, s in enumerate(subs):
            assert s.rank == r
            assert unrank(n, k, r).elements == s.elements
            assert rank(s.elements, n) == r


def test_binomial_values():
    assert binomial(7, 0) == 1
    assert binomial(4, 2) == 6
    assert binomial(20, 10) == pascal(20)[20][10] == 184756


def test_binomial_fixed_width_overflow():
    assert binomial(60, 30, max_bits=64) == 118264581564861424
    with pytest.raises(OverflowError):
        binomial(70, 35, max_bits=64)


@pytest.mark.parametrize("n,k", [(2, 3), (0, 1), (3, -1)])
def test_domain_errors(n, k):
    with pytest.raises(DomainError):
        k_subsets(n, k)


def test_unrank_out_of_range():
    with pytest.raises(DomainError):
        unrank(4, 2, 6)
    with pytest.raises(DomainError):
        unrank(4, 2, -1)


def test_invalid_subsets_rejected():
    with pytest.raises(DomainError):
        SubsetIndex(3, (2, 1))
    with pytest.raises(DomainError):
        SubsetIndex(3, (1, 4))
    with pytest.raises(DomainError):
        SubsetIndex(3, (1, 1))


def test_serialization():
    s = SubsetIndex(5, (1, 3, 4))
    assert str(s) == "{1,3,4}"
    assert parse_subset("{1,3,4}", 5) == s
    assert str(SubsetIndex(5, ())) == "{}"
    assert parse_subset("{}", 5).elements == ()


@given(st.integers(1, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))), st.data())
def test_rank_unrank_inverse(nk, data):
    n, k = nk
    r = data.draw(st.integers(0, binomial(n, k) - 1))
    s = unrank(n, k, r)
    assert len(s) == k and rank(s.elements, n) == r
    assert s.elements == tuple(sorted(set(s.elements)))
