"""Index values, rank tables, and crossing bookkeeping.

The headline tables here are fixed expected data; the index function
itself is additionally checked against three independently coded
recursions that walk the critical times instead of evaluating the
staircase function directly.
"""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cstarcalc.fixtures import builtin_fixture
from cstarcalc.manifold import Component
from cstarcalc.indices import (
    cohomology_ranks,
    compatibly_weighted,
    critical_times,
    csr_index_shortcut,
    f_weight,
    floer_ranks,
    index_at,
    index_table,
    is_m_minimal,
    lambda_alpha,
    maslov,
    morse_bott_index,
    outer_periods,
    p_stable_period,
    window_jump,
)
from cstarcalc.numerics import Side, Slope


def S(text: str) -> Slope:
    return Slope.parse(text)


# Independent recursions for the index, used purely as oracles.


def side_steps(side: Side) -> int:
    return {Side.BELOW: 0, Side.AT: 1, Side.ABOVE: 2}[side]


def mu_by_magnitude_counts(c: Component, s: Slope) -> int:
    """Count crossings magnitude by magnitude."""
    out = morse_bott_index(c)
    for mag in c.weight_magnitudes():
        crossed = math.floor(mag * s.value)
        count = 2 * crossed
        if crossed > 0 and mag * s.value == crossed:
            count -= 2 - side_steps(s.side)
        out -= count * f_weight(c, mag)
    return out


def mu_by_coprime_counts(c: Component, s: Slope) -> int:
    """Group crossings by the reduced denominator of the critical time."""
    out = morse_bott_index(c)
    mags = c.weight_magnitudes()
    top = mags[-1]
    for den in range(1, top + 1):
        bundle = sum(f_weight(c, b) for b in mags if b % den == 0)
        if bundle == 0:
            continue
        count = 0
        for j in range(1, math.floor(den * s.value) + 1):
            if math.gcd(j, den) != 1:
                continue
            if Fraction(j, den) < s.value:
                count += 2
            else:
                count += side_steps(s.side)
        out -= count * bundle
    return out


def mu_by_walking(c: Component, s: Slope) -> int:
    """Walk every critical time once, paying its cost in half-steps."""
    out = morse_bott_index(c)
    mags = c.weight_magnitudes()
    crits = sorted(
        {
            Fraction(j, mag)
            for mag in mags
            for j in range(1, math.floor(mag * s.value) + 1)
            if Fraction(j, mag) <= s.value
        }
    )
    for t in crits:
        cost = sum(f_weight(c, mag) for mag in mags if (t * mag).denominator == 1)
        halves = 2 if t < s.value else side_steps(s.side)
        out -= halves * cost
    return out


S32_SLOPES = ["0+", "1/5+", "1/3+", "2/5+", "3/5+", "2/3+", "4/5+", "1+"]
S32_ROWS = {
    "0+": [4, 4, 4, 4, 4, 2, 2, 2, 2, 0],
    "1/5+": [4, 2, 2, 4, 4, 2, 2, 2, 2, 0],
    "1/3+": [0, 2, 2, 0, 0, 0, 0, 0, 0, 0],
    "2/5+": [0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    "3/5+": [0, -2, -2, 0, 0, 0, 0, 0, 0, 0],
    "2/3+": [-4, -2, -2, -4, -4, -2, -2, -2, -2, 0],
    "4/5+": [-4, -4, -4, -4, -4, -2, -2, -2, -2, 0],
    "1+": [-4, -4, -4, -4, -4, -6, -6, -6, -6, -8],
}


def test_full_index_table_of_big_example():
    m = builtin_fixture("s32")
    table = index_table(m, [S(t) for t in S32_SLOPES])
    assert table.components == tuple(m.component_names())
    for text, row in S32_ROWS.items():
        got = [table.entry(name, S(text)) for name in table.components]
        assert got == row, f"slope {text}"


def test_rank_columns_of_big_example():
    m = builtin_fixture("s32")
    assert cohomology_ranks(m) == {0: 1, 2: 4, 4: 5}
    assert floer_ranks(m, S("0+")) == {0: 1, 2: 4, 4: 5}
    assert floer_ranks(m, S("1/5+")) == {0: 1, 2: 6, 4: 3}
    assert floer_ranks(m, S("1/3+")) == {0: 8, 2: 2}
    assert floer_ranks(m, S("2/5+")) == {0: 10}


def test_maslov_numbers():
    values = {
        "s32": 4,
        "a1_phi1": 2,
        "a1_phi2": 3,
        "a2_a": 2,
        "a2_b": 1,
        "a2_c": 1,
        "a3_ex59": 1,
        "a4_mckay": 2,
        "synth_515": 4,
    }
    for name, mu in values.items():
        assert maslov(builtin_fixture(name)) == mu


def test_small_fixture_rank_groups():
    a2a = builtin_fixture("a2_a")
    assert floer_ranks(a2a, S("0+")) == {0: 1, 2: 2}
    assert floer_ranks(a2a, S("1/3+")) == {0: 3}
    assert floer_ranks(a2a, S("2/3+")) == {-2: 2, 0: 1}
    assert floer_ranks(a2a, S("1+")) == {-4: 1, -2: 2}
    a2b = builtin_fixture("a2_b")
    assert floer_ranks(a2b, S("0+")) == {0: 1, 2: 2}
    assert floer_ranks(a2b, S("1/2+")) == {0: 2, 2: 1}
    assert floer_ranks(a2b, S("1+")) == {-2: 1, 0: 2}
    assert floer_ranks(a2b, S("2+")) == {-4: 1, -2: 2}


def test_rank_totals_are_conserved():
    for name in ("s32", "a2_a", "a3_ex59", "a1_phi2"):
        m = builtin_fixture(name)
        total = sum(c.total_betti() for c in m.components)
        for text in ("0+", "1/5+", "1/2-", "1+", "7/3+"):
            assert sum(floer_ranks(m, S(text)).values()) == total


SEQUENCE_SLOPES = [
    Slope(Fraction(0), Side.ABOVE),
    Slope(Fraction(1, 3), Side.AT),
    Slope(Fraction(5, 12), Side.AT),
    Slope(Fraction(1, 2), Side.AT),
    Slope(Fraction(7, 12), Side.AT),
    Slope(Fraction(2, 3), Side.AT),
    Slope(Fraction(5, 6), Side.AT),
    Slope(Fraction(1), Side.AT),
]


def test_chain_fixture_index_sequences():
    m = builtin_fixture("a3_ex59")
    alpha = m.component("alpha")
    gamma = m.component("gamma")
    crit = [s for s in SEQUENCE_SLOPES if s.value.denominator in (1, 2, 3)]
    assert [index_at(alpha, s) for s in crit] == [2, 1, 1, 1, 0]
    assert [index_at(gamma, s) for s in crit] == [2, 2, 1, 0, 0]
    assert [index_at(alpha, s) for s in SEQUENCE_SLOPES] == [2, 1, 0, 1, 2, 1, 0, 0]
    assert [index_at(gamma, s) for s in SEQUENCE_SLOPES] == [2, 2, 2, 1, 0, 0, 0, 0]


def test_critical_times_of_chain_fixture():
    m = builtin_fixture("a3_ex59")
    times = critical_times(m, Fraction(1))
    assert times == [
        (Fraction(1, 3), ["alpha"]),
        (Fraction(1, 2), ["alpha", "gamma"]),
        (Fraction(2, 3), ["alpha"]),
        (Fraction(1), ["alpha", "beta", "gamma"]),
    ]


def test_outer_periods():
    s32 = builtin_fixture("s32")
    assert outer_periods(s32, Fraction(1)) == [
        Fraction(1, 5),
        Fraction(1, 3),
        Fraction(2, 5),
        Fraction(3, 5),
        Fraction(2, 3),
        Fraction(4, 5),
        Fraction(1),
    ]
    a2b = builtin_fixture("a2_b")
    assert outer_periods(a2b, Fraction(2)) == [
        Fraction(1, 2),
        Fraction(1),
        Fraction(3, 2),
        Fraction(2),
    ]


def test_first_movement_and_stability_slopes():
    s32 = builtin_fixture("s32")
    assert lambda_alpha(s32.component("F_min")) == 1
    assert lambda_alpha(s32.component("F_p")) == Fraction(1, 5)
    assert p_stable_period(s32) == Fraction(1, 5)
    assert p_stable_period(builtin_fixture("a2_b")) == Fraction(1, 2)
    assert lambda_alpha(builtin_fixture("a1_phi2").component("p2")) == Fraction(1, 2)


def test_order_minimality():
    s32 = builtin_fixture("s32")
    assert is_m_minimal(s32.component("F_big"), 3)
    assert is_m_minimal(s32.component("F_p"), 5)
    assert not is_m_minimal(s32.component("F_big"), 1)
    assert not is_m_minimal(s32.component("F_big"), 5)
    assert is_m_minimal(s32.component("F_min"), 1)


def test_compatible_weighting():
    synth = builtin_fixture("synth_515").component("F_alpha")
    assert compatibly_weighted(synth)
    s32 = builtin_fixture("s32")
    assert all(compatibly_weighted(c) for c in s32.components)
    bad = Component("t", 0, (1,), {1: 1, -2: 1}, Fraction(0))
    assert not compatibly_weighted(bad)


def test_window_jump_of_synthetic_model():
    c = builtin_fixture("synth_515").component("F_alpha")
    wj = window_jump(c, 7, 2)
    assert wj.index_before == 1
    assert wj.index_after == 7
    assert wj.drop == -6 and wj.jump == 6
    assert wj.terms == {
        6: (2, -1, -2),
        7: (2, 1, 2),
        10: (4, -3, -12),
        11: (2, 3, 6),
    }
    assert sum(prod for _, _, prod in wj.terms.values()) == wj.drop
    assert wj.tallies == {
        3: Fraction(1),
        5: Fraction(1),
        6: Fraction(0),
        7: Fraction(1),
        10: Fraction(1),
        11: Fraction(1),
    }


def test_window_jump_drop_identity_elsewhere():
    for name in ("s32", "a1_phi2", "a3_ex59"):
        m = builtin_fixture(name)
        for c in m.components:
            for mm, p in [(2, 0), (3, 1), (5, 3), (4, 4)]:
                wj = window_jump(c, mm, p)
                assert sum(t[2] for t in wj.terms.values()) == wj.drop


CSR_FIXTURES = {
    "s32": 2,
    "a2_a": 2,
    "a2_b": 1,
    "a2_c": 1,
    "a3_ex59": 1,
    "a4_mckay": 2,
}


@pytest.mark.parametrize("name,s", sorted(CSR_FIXTURES.items()))
def test_symmetric_shortcut_matches_direct_index(name, s):
    m = builtin_fixture(name)
    for c in m.components:
        for i in range(0, 7):
            direct = index_at(c, Slope(Fraction(i, s), Side.ABOVE))
            assert csr_index_shortcut(c, s, i) == direct, (c.name, i)


def test_full_turn_identity():
    """Index just below an integer slope from the weight totals alone."""
    for name in ("s32", "a2_a", "a2_b", "a3_ex59", "synth_515"):
        m = builtin_fixture(name)
        for c in m.components:
            mu = sum(k * h for k, h in c.weights.items())
            plus = sum(h for k, h in c.weights.items() if k > 0)
            minus = sum(h for k, h in c.weights.items() if k < 0)
            for n in (1, 2, 3):
                want = morse_bott_index(c) - 2 * n * mu + 2 * (plus - minus)
                got = index_at(c, Slope(Fraction(n), Side.BELOW))
                assert got == want == 2 * plus - 2 * n * mu


def test_index_upper_bound():
    for name in ("s32", "a2_a", "a2_b", "a3_ex59", "a4_mckay"):
        m = builtin_fixture(name)
        mu = maslov(m)
        samples = [S(t) for t in ("0+", "1/5+", "1/2-", "2/3+", "1+", "3/2+", "2+")]
        for c in m.components:
            for s in samples:
                bound = 2 * m.dim_c - c.dim_c - 2 * s.value * mu
                assert index_at(c, s) <= bound, (c.name, str(s))


@st.composite
def weighted_points(draw):
    keys = draw(
        st.lists(
            st.integers(-6, 6).filter(lambda k: k != 0),
            min_size=1,
            max_size=4,
            unique=True,
        )
    )
    weights = {k: draw(st.integers(1, 3)) for k in keys}
    return Component("t", 0, (1,), weights, Fraction(0))


@st.composite
def sided_slopes(draw):
    num = draw(st.integers(0, 12))
    den = draw(st.integers(1, 8))
    side = draw(st.sampled_from([Side.BELOW, Side.AT, Side.ABOVE]))
    if num == 0:
        side = Side.ABOVE
    return Slope(Fraction(num, den), side)


@settings(max_examples=200, deadline=None)
@given(weighted_points(), sided_slopes())
def test_index_recursions_agree(c, s):
    """All three crossing recursions match the staircase evaluation."""
    direct = index_at(c, s)
    assert mu_by_magnitude_counts(c, s) == direct
    assert mu_by_coprime_counts(c, s) == direct
    assert mu_by_walking(c, s) == direct


def test_table_rendering():
    m = builtin_fixture("a1_phi1")
    table = index_table(m, [S("0+"), S("1/3+"), S("1+")])
    assert table.to_csv() == (
        "component,0+,1/3+,1+\n"
        "p2,0,0,-4\n"
        "p1,2,0,-2\n"
    )
    assert table.to_markdown() == (
        "| slope | p2 | p1 |\n"
        "| --- | ---: | ---: |\n"
        "| 0+ | 0 | 2 |\n"
        "| 1/3+ | 0 | 0 |\n"
        "| 1+ | -4 | -2 |\n"
    )
    assert table.column(S("1+")) == {"p2": -4, "p1": -2}
