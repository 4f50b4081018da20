"""Rational-function linear algebra and the quantum product calculators."""

from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cstarcalc.findings import all_ok, failures
from cstarcalc.fixtures import ALGEBRA_NAMES, builtin_algebra, make_okm
from cstarcalc.qalg import (
    AlgebraError,
    FracT,
    PolyT,
    Subspace,
    _kernel_basis,
    _rref,
    cup_ideal_check,
    generalized_zero_eigenspace,
    ini_specialize,
    kernel_power,
    mult_matrix,
    parse_algebra,
    serialize_algebra,
    sh_rank,
    stabilization_index,
    validate_algebra,
)

T = PolyT.t_power(1)
ONE = PolyT.const(1)


def fr(num, den=None) -> FracT:
    return FracT(num, den)


def test_poly_arithmetic_and_str():
    p = PolyT({2: 3, 0: -1})
    q = PolyT({1: Fraction(1, 2)})
    assert str(p) == "3*T^2 - 1"
    assert str(q) == "1/2*T"
    assert str(p * q) == "3/2*T^3 - 1/2*T"
    assert str(PolyT()) == "0"
    assert str(-T) == "-T"
    assert (p - p).is_zero()
    assert p.degree() == 2 and p.valuation() == 0
    assert PolyT({3: 2}).valuation() == 3


def test_poly_rejects_bad_input():
    with pytest.raises(AlgebraError):
        PolyT({-1: 1})
    with pytest.raises(AlgebraError):
        PolyT({0: 0.5})
    with pytest.raises(AlgebraError):
        PolyT({0: True})


def test_fract_reduction_and_monic_denominator():
    x = fr(PolyT({2: 1, 0: -1}), PolyT({1: 1, 0: -1}))
    assert x == fr(PolyT({1: 1, 0: 1}))
    y = fr(PolyT({1: 2}), PolyT({0: 2}))
    assert y == fr(T)
    z = fr(PolyT({1: 1}), PolyT({1: 2}))
    assert z == FracT.const(Fraction(1, 2))
    assert str(fr(ONE, T)) == "1/T"


def test_fract_limits_and_valuation():
    assert fr(T).t_limit() == 0
    assert fr(PolyT({1: 1, 0: 3}), PolyT({0: 2})).t_limit() == Fraction(3, 2)
    assert FracT.const(0).valuation() is None
    assert fr(T).valuation() == 1
    assert fr(ONE, T).valuation() == -1
    with pytest.raises(AlgebraError, match="pole"):
        fr(ONE, T).t_limit()
    assert fr(T).scale_t(-1) == FracT.const(1)


def test_fract_field_ops():
    a = fr(T)
    b = fr(PolyT({0: 1, 1: 1}))
    assert (a / b) * b == a
    assert a - a == FracT.const(0)
    assert (a + b).num == PolyT({0: 1, 1: 2})
    with pytest.raises(ZeroDivisionError):
        a / FracT.const(0)


def rational_matrix_rank(rows) -> int:
    """Plain Gaussian elimination over the rationals, used as an oracle."""
    work = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        rank += 1
    return rank


def evaluate(x: FracT, t: Fraction) -> Fraction | None:
    num = sum(c * t**e for e, c in x.num.coeffs.items())
    den = sum(c * t**e for e, c in x.den.coeffs.items())
    if den == 0:
        return None
    return Fraction(num) / den


def test_rank_matches_generic_evaluation():
    """Rank over the function field equals rank at a generic parameter.

    For each random matrix the maximum of the evaluated ranks over
    several sample points must agree with the symbolic rank.
    """
    rng = random.Random(7)
    samples = [Fraction(2), Fraction(3), Fraction(5, 7), Fraction(-11, 3), Fraction(13)]
    for _ in range(100):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        mat = []
        for _ in range(n):
            row = []
            for _ in range(m):
                if rng.random() < 0.25:
                    row.append(fr(PolyT({rng.randint(0, 2): rng.randint(-2, 2)})))
                else:
                    row.append(FracT.const(rng.randint(-2, 2)))
            mat.append(tuple(row))
        rows, pivots = _rref(mat)
        symbolic = len(rows)
        best = 0
        for t in samples:
            evaluated = [[evaluate(x, t) for x in row] for row in mat]
            if any(v is None for row in evaluated for v in row):
                continue
            best = max(best, rational_matrix_rank(evaluated))
        assert symbolic == best
        kernel = _kernel_basis([list(r) for r in mat])
        assert len(kernel) == m - symbolic
        for vec in kernel:
            image = [
                sum((mat[i][j] * vec[j] for j in range(m)), FracT.const(0))
                for i in range(n)
            ]
            assert all(x.is_zero() for x in image)


def test_subspace_membership():
    v1 = (fr(T), FracT.const(1), FracT.const(0))
    v2 = (FracT.const(0), FracT.const(0), FracT.const(1))
    s = Subspace([v1, v2], 3)
    assert s.dim == 2
    assert s.contains(tuple(x * fr(T) for x in v1))
    assert not s.contains((FracT.const(1), FracT.const(0), FracT.const(0)))
    assert Subspace([v1], 3) <= s
    assert not s <= Subspace([v1], 3)


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_builtin_algebras_validate(name):
    a = builtin_algebra(name)
    findings = validate_algebra(a)
    assert all_ok(findings), [str(f) for f in failures(findings)]


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_algebra_round_trip(name):
    a = builtin_algebra(name)
    text = json.dumps(serialize_algebra(a))
    assert parse_algebra(text) == a


def test_parse_algebra_rejections():
    a = serialize_algebra(builtin_algebra("cp1xc"))
    a["junk"] = 1
    with pytest.raises(AlgebraError, match="unknown keys"):
        parse_algebra(a)
    b = serialize_algebra(builtin_algebra("cp1xc"))
    b["unit"] = "y"
    with pytest.raises(AlgebraError, match="unit"):
        parse_algebra(b)
    c = serialize_algebra(builtin_algebra("cp1xc"))
    c["products"]["x*y"] = []
    with pytest.raises(AlgebraError, match="bad product key"):
        parse_algebra(c)


def okm_chain_dims(k: int, m: int) -> list[int]:
    a = make_okm(k, m)
    idx = stabilization_index(a, "Qphi")
    return [kernel_power(a, "Qphi", n).dim for n in range(idx + 1)]


def test_one_generator_models_stabilize_at_k():
    """Kernel chains grow by one per step and stop at length k."""
    for k, m in [(1, 1), (1, 2), (2, 3), (2, 2), (3, 4), (2, 4)]:
        a = make_okm(k, m)
        assert stabilization_index(a, "Qphi") == k
        assert okm_chain_dims(k, m) == list(range(k + 1))
        assert generalized_zero_eigenspace(a, "Qphi").dim == k
        assert sh_rank(a, "Qphi") == 1 + m - k


def test_okm_make_rejects_bad_parameters():
    with pytest.raises(ValueError):
        make_okm(0, 1)
    with pytest.raises(ValueError):
        make_okm(3, 2)


def test_okm23_kernel_vectors():
    a = make_okm(2, 3)
    x3_minus_4tx = (FracT.const(0), fr(PolyT({1: -4})), FracT.const(0), FracT.const(1))
    x2_minus_4t = (fr(PolyT({1: -4})), FracT.const(0), FracT.const(1), FracT.const(0))
    k1 = kernel_power(a, "Qphi", 1)
    assert k1.dim == 1 and k1.contains(x3_minus_4tx)
    e0 = generalized_zero_eigenspace(a, "Qphi")
    assert e0.dim == 2
    assert e0.contains(x3_minus_4tx) and e0.contains(x2_minus_4t)
    assert not e0.contains(a.basis_vector(1))


def test_okm23_cup_check_fails_without_initial_subspace():
    """The plain T -> 0 product does not preserve the kernel line."""
    a = make_okm(2, 3)
    k1 = kernel_power(a, "Qphi", 1)
    findings = {f.rule: f.ok for f in cup_ideal_check(a, k1, use_initial=False)}
    assert findings == {"star-ideal": True, "cup-ideal": False}
    findings = {f.rule: f.ok for f in cup_ideal_check(a, k1, use_initial=True)}
    assert findings == {"star-ideal": True, "ini-cup-ideal": True}


def test_okm11_and_12_cup_checks_pass():
    for name in ("okm_1_1", "okm_1_2"):
        a = builtin_algebra(name)
        k1 = kernel_power(a, "Qphi", 1)
        assert all_ok(cup_ideal_check(a, k1, use_initial=True))


def test_two_variable_model():
    a = builtin_algebra("o11")
    assert [kernel_power(a, "negX", n).dim for n in range(4)] == [0, 2, 3, 3]
    assert stabilization_index(a, "negX") == 2
    assert sh_rank(a, "negX") == 1
    v_diff = (FracT.const(0), FracT.const(1), FracT.const(-1), FracT.const(0))
    assert kernel_power(a, "negX", 1).contains(v_diff)


def test_product_of_surface_with_zero_class():
    a = builtin_algebra("cp1xc")
    mat = mult_matrix(a, "x3")
    assert all(x.is_zero() for row in mat for x in row)
    assert stabilization_index(a, "x3") == 1
    assert sh_rank(a, "x3") == 0


def test_ini_specialize_simple_and_replacement():
    a = builtin_algebra("okm_2_3")
    k1 = kernel_power(a, "Qphi", 1)
    ini = ini_specialize(a, k1)
    assert ini == [(Fraction(0), Fraction(0), Fraction(0), Fraction(1))]

    rows = [
        (FracT.const(1), FracT.const(1)),
        (FracT.const(1), fr(PolyT({0: 1, 1: 1}))),
    ]
    ini = ini_specialize(builtin_algebra("cp1xc"), rows)
    assert ini == [
        (Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(1)),
    ]


def test_ini_specialize_rejects_dependent_rows():
    rows = [
        (FracT.const(1), fr(T)),
        (fr(T), fr(T) * fr(T)),
    ]
    with pytest.raises(AlgebraError, match="dependent"):
        ini_specialize(builtin_algebra("cp1xc"), rows)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(
            st.tuples(st.integers(-3, 3), st.integers(0, 1)), min_size=2, max_size=3
        ),
        min_size=1,
        max_size=3,
    )
)
def test_ini_specialize_preserves_rank(raw):
    width = len(raw[0])
    rows = [
        tuple(fr(PolyT({e: c})) if c else FracT.const(0) for c, e in r[:width])
        for r in raw
        if len(r) >= width
    ]
    if not rows:
        return
    sub = Subspace(rows, width)
    ini = ini_specialize(builtin_algebra("cp1xc"), sub)
    assert len(ini) == sub.dim
    if ini:
        assert rational_matrix_rank(ini) == sub.dim


def test_mult_matrix_columns_are_images():
    a = builtin_algebra("okm_1_1")
    mat = mult_matrix(a, "Qphi")
    assert mat[1][0] == FracT.const(-1)
    assert mat[1][1] == fr(T)
    assert mat[0][0].is_zero() and mat[0][1].is_zero()
