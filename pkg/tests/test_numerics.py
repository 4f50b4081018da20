from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cstarcalc.numerics import (
    IntervalSpec,
    Side,
    Slope,
    c_count,
    n_count,
    w_at,
    w_index,
)


def _w_brute(x: Fraction) -> int:
    """Oracle for the staircase weight, by bare enumeration.

    Counts lattice points in (0, x] and [0, x) separately, one unit per
    point, extended oddly to negatives.  No floor, no parity tricks, so
    it cannot share a bug with the closed form.
    """
    if x < 0:
        return -_w_brute(-x)
    total = 0
    j = 1
    while j <= x:
        total += 1
        j += 1
    j = 0
    while j < x:
        total += 1
        j += 1
    return total


def _count_brute(m: int, iv: IntervalSpec, coprime: bool) -> int:
    """Oracle for the dilation counts: walk every candidate integer."""
    from math import gcd

    lo = iv.lo * m
    hi = iv.hi * m
    total = 0
    j = int(lo) - abs(int(lo)) - 2  # safely below lo
    while j <= hi:
        if j >= lo:
            if coprime and gcd(j, m) != 1:
                j += 1
                continue
            if j == lo and j == hi:
                total += 1 if (iv.include_lo and iv.include_hi) else 0
            elif j == lo:
                total += 1 if iv.include_lo else 0
            elif j == hi:
                total += 1 if iv.include_hi else 0
            else:
                total += 2
        j += 1
    return total


rationals = st.fractions(min_value=-400, max_value=400, max_denominator=48)
big_rationals = st.fractions(
    min_value=-(10**6), max_value=10**6, max_denominator=997
)


def test_w_index_small_values():
    assert w_index(0) == 0
    assert w_index(1) == 2
    assert w_index(Fraction(1, 2)) == 1
    assert w_index(Fraction(3, 2)) == 3
    assert w_index(Fraction(-3, 2)) == -3
    assert w_index(Fraction(22, 7)) == 7
    assert w_index(Fraction(-20, 7)) == -5
    assert w_index(-4) == -8


def test_w_index_rejects_floats():
    with pytest.raises(TypeError):
        w_index(0.5)  # type: ignore[arg-type]
    with pytest.raises(TypeError):
        w_at(Slope(Fraction(1, 2)), 1.0)  # type: ignore[arg-type]


@settings(max_examples=400, deadline=None)
@given(rationals)
def test_w_index_matches_enumeration_oracle(x):
    assert w_index(x) == _w_brute(x)


@settings(max_examples=10000, deadline=None)
@given(big_rationals, big_rationals, st.integers(min_value=-(10**6), max_value=10**6))
def test_w_identities(x, y, n):
    w = w_index(x)
    assert w_index(-x) == -w
    assert (w % 2 != 0) == (x.denominator != 1)
    assert 2 * x >= w - 1
    assert w - 1 >= 2 * x - 2
    assert w_index(n + x) == 2 * n + w
    if x <= y:
        assert w <= w_index(y)
    else:
        assert w >= w_index(y)


def test_slope_parsing():
    assert Slope.parse("0+") == Slope(Fraction(0), Side.ABOVE)
    assert Slope.parse("1/5+") == Slope(Fraction(1, 5), Side.ABOVE)
    assert Slope.parse("2/7") == Slope(Fraction(2, 7), Side.AT)
    assert Slope.parse("3-") == Slope(Fraction(3), Side.BELOW)
    assert Slope.parse("10") == Slope(Fraction(10), Side.AT)
    assert Slope.parse("4/6") == Slope(Fraction(2, 3), Side.AT)


@pytest.mark.parametrize(
    "text", ["0-", "-1/3", "1/0", "x", "1.5", "5/3+junk", "", "+", "1/", "/3"]
)
def test_slope_parse_rejects(text):
    with pytest.raises(ValueError):
        Slope.parse(text)


def test_slope_zero_below_rejected():
    with pytest.raises(ValueError):
        Slope(Fraction(0), Side.BELOW)


def test_slope_round_trip_and_order():
    texts = ["0+", "1/5", "1/5+", "1/3-", "1/3", "1/3+", "2/5", "1-", "1", "1+", "2"]
    slopes = [Slope.parse(t) for t in texts]
    assert [str(s) for s in slopes] == texts
    assert sorted(slopes) == slopes
    assert Slope.parse("1/5+") < Slope.parse("1/3-")
    assert Slope.parse("1-") < Slope.parse("1") < Slope.parse("1+")


def test_w_at_worked_cases():
    assert w_at(Slope.parse("1+"), 3) == 7
    assert w_at(Slope.parse("1-"), 3) == 5
    assert w_at(Slope.parse("1"), 3) == 6
    assert w_at(Slope.parse("1/3+"), -1) == -1
    for text in ["0+", "1/3+", "1", "5/2-"]:
        assert w_at(Slope.parse(text), 0) == 0
    # integer product, negative k: the bump flips
    assert w_at(Slope.parse("1/3+"), -3) == -3
    assert w_at(Slope.parse("1/3-"), -3) == -1
    assert w_at(Slope.parse("2/7+"), 7) == 5
    assert w_at(Slope.parse("2/7"), 7) == 4


@settings(max_examples=2000, deadline=None)
@given(
    st.fractions(min_value=0, max_value=50, max_denominator=60),
    st.integers(min_value=-40, max_value=40),
    st.sampled_from([Side.BELOW, Side.AT, Side.ABOVE]),
)
def test_w_at_is_limit_of_w_index(value, k, side):
    if value == 0 and side is Side.BELOW:
        return
    s = Slope(value, side)
    if side is Side.AT:
        assert w_at(s, k) == w_index(value * k)
        return
    eps = Fraction(1, 3 * (abs(k) + 1) * value.denominator)
    shifted = value + eps if side is Side.ABOVE else value - eps
    assert w_at(s, k) == w_index(shifted * k)


def test_n_count_footnote_values():
    iv = IntervalSpec.closed(Fraction(1, 2), Fraction(1))
    assert n_count(6, iv) == 6
    iv_half_open = IntervalSpec(Fraction(1, 2), Fraction(1), include_lo=False)
    assert n_count(6, iv_half_open) == 5


def test_c_count_window_values():
    iv = IntervalSpec.closed(Fraction(2, 7), Fraction(3, 7))
    # interior integers count double, boundary integers once,
    # restricted to residues coprime to m
    assert c_count(3, iv) == 2
    assert c_count(5, iv) == 2
    assert c_count(6, iv) == 0
    assert c_count(7, iv) == 2
    assert c_count(10, iv) == 2
    assert c_count(11, iv) == 2
    assert n_count(7, iv) == 2
    assert n_count(10, iv) == 4
    assert n_count(11, iv) == 2
    assert n_count(6, iv) == 2


def test_counts_on_degenerate_intervals():
    point = IntervalSpec.closed(Fraction(1, 2), Fraction(1, 2))
    assert n_count(2, point) == 1
    assert n_count(2, IntervalSpec(Fraction(1, 2), Fraction(1, 2), True, False)) == 0
    empty = IntervalSpec.closed(Fraction(2, 3), Fraction(1, 3))
    assert n_count(5, empty) == 0


small_intervals = st.tuples(
    st.fractions(min_value=-8, max_value=8, max_denominator=12),
    st.fractions(min_value=-8, max_value=8, max_denominator=12),
    st.booleans(),
    st.booleans(),
).map(lambda t: IntervalSpec(min(t[0], t[1]), max(t[0], t[1]), t[2], t[3]))


@settings(max_examples=600, deadline=None)
@given(st.integers(min_value=1, max_value=40), small_intervals)
def test_counts_match_enumeration_oracle(m, iv):
    assert n_count(m, iv) == _count_brute(m, iv, coprime=False)
    assert c_count(m, iv) == _count_brute(m, iv, coprime=True)


@settings(max_examples=600, deadline=None)
@given(st.integers(min_value=1, max_value=40), small_intervals)
def test_coprime_refinement_sums_to_full_count(m, iv):
    divisors = [d for d in range(1, m + 1) if m % d == 0]
    assert n_count(m, iv) == sum(c_count(d, iv) for d in divisors)


def test_count_rejects_bad_multiplier():
    iv = IntervalSpec.closed(Fraction(0), Fraction(1))
    with pytest.raises(ValueError):
        n_count(0, iv)
    with pytest.raises(ValueError):
        c_count(-3, iv)
