import math

import pytest
from hypothesis import given, strategies as st

from cyclotope.arith import (CrtIndex, check_pairwise_coprime, crt_decode, crt_encode, crt_pair,
                             gcd_set, lcm_set)
from cyclotope.errors import InvalidInputError

positive = st.integers(min_value=1, max_value=200)


def test_empty_conventions():
    assert gcd_set([]) == 0
    assert lcm_set([]) == 1


@given(st.lists(positive, min_size=1, max_size=6))
def test_gcd_lcm_divisibility(xs):
    g, l = gcd_set(xs), lcm_set(xs)
    assert all(x % g == 0 and l % x == 0 for x in xs)
    assert g == math.gcd(*xs) and l == math.lcm(*xs)


def test_lcm_rejects_nonpositive():
    with pytest.raises(InvalidInputError):
        lcm_set([3, 0])


def test_pairwise_coprime():
    check_pairwise_coprime([2, 3, 5])
    with pytest.raises(InvalidInputError):
        check_pairwise_coprime([6, 10, 7])


coprime_moduli = st.lists(st.sampled_from([2, 3, 5, 7, 11, 13]), min_size=1, max_size=4,
                          unique=True)


@given(coprime_moduli, st.data())
def test_crt_round_trip(moduli, data):
    k = data.draw(st.integers(0, math.prod(moduli) - 1))
    idx = crt_decode(k, moduli)
    assert idx.residues == tuple(k % m for m in moduli)
    assert crt_encode(idx) == k


def test_crt_pair_brute_force():
    for m1, m2 in [(2, 3), (3, 5), (4, 9)]:
        for r1 in range(m1):
            for r2 in range(m2):
                k = crt_pair(r1, m1, r2, m2)
                assert 0 <= k < m1 * m2 and k % m1 == r1 and k % m2 == r2


def test_crt_index_validation():
    with pytest.raises(InvalidInputError):
        CrtIndex((2, 4), (0, 1))
    with pytest.raises(InvalidInputError):
        CrtIndex((2, 3), (2, 0))
    with pytest.raises(InvalidInputError):
        crt_decode(6, (2, 3))
