import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cyclotope.embed import all_vertices
from cyclotope.ehrhart import (count_lattice_points_oracle, ehrhart_two_orbit, ehrhart_values,
                               hstar_product_simplices, poly_mul, poly_pow, two_orbit_factor)
from cyclotope.errors import InvalidInputError, ResourceLimitError
from cyclotope.group import CycleType
from cyclotope.lp import find_feasible


def _in_dilate(points, x, k):
    """x in k * conv(points), decided by an exact feasibility LP."""
    n = len(points)
    A_eq = [[p[j] for p in points] for j in range(len(x))] + [[1] * n]
    b_eq = list(x) + [k]
    A_ge = [[int(i == j) for j in range(n)] for i in range(n)]
    return find_feasible(A_eq, b_eq, A_ge, [0] * n, nvars=n) is not None


def _count_by_lp(ct, k):
    pts = all_vertices(ct)
    blocks = [[c for c in itertools.product(range(k + 1), repeat=ell) if sum(c) == k]
              for ell in ct.lengths]
    return sum(_in_dilate(pts, sum(combo, ()), k) for combo in itertools.product(*blocks))


def test_series_examples():
    s = ehrhart_two_orbit(CycleType((2, 3)))
    assert (s.numerator, s.denominator_exponent) == ((1, 2), 4)
    s = ehrhart_two_orbit(CycleType((4, 6)))
    assert (s.numerator, s.denominator_exponent) == ((1, 4, 4), 8)
    assert s.render(*two_orbit_factor(CycleType((4, 6)))) == "(1 + 2t)^2 / (1-t)^8"
    assert ehrhart_values(s, 1) == [1, 12]
    assert ehrhart_values(ehrhart_two_orbit(CycleType((2, 3))), 1) == [1, 6]


def test_two_orbit_only():
    with pytest.raises(InvalidInputError):
        ehrhart_two_orbit(CycleType((6,)))
    with pytest.raises(InvalidInputError):
        ehrhart_two_orbit(CycleType((2, 3, 5)))


def test_simplex_series():
    s = hstar_product_simplices(0, 4)
    assert s.numerator == (1,)
    assert ehrhart_values(s, 3) == [math.comb(k + 4, 4) for k in range(4)]


@given(st.integers(0, 5), st.integers(0, 5))
def test_product_of_simplices_values(a, b):
    # lattice points of k(Delta_a x Delta_b) = C(k+a, a) C(k+b, b)
    s = hstar_product_simplices(a, b)
    assert ehrhart_values(s, 5) == [math.comb(k + a, a) * math.comb(k + b, b) for k in range(6)]


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.integers(0, 4))
def test_poly_pow_is_repeated_mul(p, e):
    expected = (1,)
    for _ in range(e):
        expected = poly_mul(expected, p)
    assert poly_pow(p, e) == expected


@given(st.integers(2, 9), st.integers(2, 9))
def test_numerator_sums_to_normalized_volume(l1, l2):
    # h*(1) = normalized volume = q * C(a+b-2, a-1) for the q-fold join
    ct = CycleType((l1, l2))
    q = math.gcd(l1, l2)
    a, b = l1 // q, l2 // q
    assert sum(ehrhart_two_orbit(ct).numerator) == math.comb(a + b - 2, a - 1) ** q


@pytest.mark.parametrize("lengths", [(2, 2), (2, 3), (2, 4), (3, 3), (2, 5), (3, 4)])
def test_closed_form_against_lp_membership(lengths):
    ct = CycleType(lengths)
    values = ehrhart_values(ehrhart_two_orbit(ct), 3)
    for k in (1, 2, 3):
        assert _count_by_lp(ct, k) == values[k]


@pytest.mark.parametrize("lengths", [(2, 3), (4, 6), (3, 6)])
def test_closed_form_against_facet_oracle(lengths):
    ct = CycleType(lengths)
    values = ehrhart_values(ehrhart_two_orbit(ct), 3)
    assert [count_lattice_points_oracle(ct, k) for k in (1, 2, 3)] == values[1:]


def test_oracle_budget():
    with pytest.raises(ResourceLimitError):
        count_lattice_points_oracle(CycleType((6, 7)), 1)
    with pytest.raises(ResourceLimitError):
        count_lattice_points_oracle(CycleType((2, 3)), 7)
