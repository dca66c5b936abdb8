"""Value-group arithmetic against the exact-rational oracle."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from valcert.values import GroupValue, INFINITY, omega

nums = st.integers(min_value=-(10**12), max_value=10**12)
exps = st.integers(min_value=0, max_value=24)
primes = st.sampled_from([2, 3, 5, 7])


def test_canonical_form():
    g = GroupValue(2, 4, 2)  # 4/4 == 1
    assert (g.num, g.exp) == (1, 0)
    assert GroupValue(2, 6, 1) == 3
    assert GroupValue(3, 0, 7).exp == 0


def test_add_examples():
    assert GroupValue(2, 1, 2) + GroupValue(2, 1, 4) == GroupValue(2, 5, 4)
    assert INFINITY + GroupValue(2, 3, 3) is INFINITY
    assert GroupValue(2, 3, 3) + INFINITY is INFINITY
    # v(s_1) = v(K_2) - v(v^4)
    assert GroupValue(2, 17, 4) - 1 == GroupValue(2, 1, 4)


def test_cmp_examples():
    assert GroupValue(2, -15, 5) < GroupValue(2, -1, 2)
    assert GroupValue(2, 3, 1) > omega(2)
    assert GroupValue(2, 0) == GroupValue(2, 0)
    assert GroupValue(2, 1, 1) < INFINITY
    assert INFINITY > GroupValue(2, 10**9)
    assert INFINITY == INFINITY and not INFINITY < INFINITY


def test_omega():
    assert omega(2) == Fraction(16, 15)
    assert omega(3) == Fraction(81, 80)
    for p in (2, 3, 5, 7):
        assert omega(p) * (p**4 - 1) == p**4
    with pytest.raises(ValueError):
        omega(4)
    with pytest.raises(ValueError):
        omega(1)


def test_infinity_arithmetic():
    assert INFINITY - GroupValue(2, 1) is INFINITY
    with pytest.raises(ArithmeticError):
        INFINITY - INFINITY
    with pytest.raises(ArithmeticError):
        -INFINITY
    with pytest.raises(ArithmeticError):
        GroupValue(2, 1) - INFINITY


def test_render():
    assert str(GroupValue(2, 17, 4)) == "17/16"
    assert str(GroupValue(2, -15, 5)) == "-15/32"
    assert str(GroupValue(3, 7)) == "7"
    assert str(INFINITY) == "inf"


def test_exact_decimal():
    assert GroupValue(2, 17, 4).exact_decimal() == "1.0625"
    assert GroupValue(2, -1, 1).exact_decimal() == "-0.5"
    assert GroupValue(5, 1, 2).exact_decimal() == "0.04"
    assert GroupValue(3, 5).exact_decimal() == "5"
    assert GroupValue(3, 1, 1).exact_decimal() is None


@given(primes, nums, exps)
def test_canonical_uniqueness(p, n, e):
    g = GroupValue(p, n, e)
    assert g.exp == 0 or g.num % p != 0
    again = GroupValue(p, g.num, g.exp)
    assert (again.num, again.exp) == (g.num, g.exp)
    assert g.as_fraction() == Fraction(n, p**e)


@given(primes, nums, exps, nums, exps)
def test_add_matches_fractions(p, n1, e1, n2, e2):
    a, b = GroupValue(p, n1, e1), GroupValue(p, n2, e2)
    assert (a + b).as_fraction() == a.as_fraction() + b.as_fraction()
    assert (a - b).as_fraction() == a.as_fraction() - b.as_fraction()
    assert (a * b).as_fraction() == a.as_fraction() * b.as_fraction()


@given(primes, nums, exps, nums, exps, nums, exps)
def test_ring_laws(p, n1, e1, n2, e2, n3, e3):
    a, b, c = (GroupValue(p, n, e) for n, e in ((n1, e1), (n2, e2), (n3, e3)))
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + GroupValue(p, 0) == a


@given(primes, nums, exps, nums, exps)
def test_order_embedding(p, n1, e1, n2, e2):
    a, b = GroupValue(p, n1, e1), GroupValue(p, n2, e2)
    # cross-multiplied big-integer comparison is the oracle
    lhs, rhs = n1 * p**e2, n2 * p**e1
    assert (a < b) == (lhs < rhs)
    assert (a == b) == (lhs == rhs)
    assert (a > b) == (lhs > rhs)


@given(nums, exps)
def test_fraction_bound_comparisons(n, e):
    g = GroupValue(2, n, e)
    f = Fraction(n, 2**e)
    assert not (g < f) and not (g > f) and g == f
    assert g < f + 1 and g > f - 1
