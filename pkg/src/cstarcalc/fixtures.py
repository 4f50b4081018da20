"""Bundled example inputs: weight-data fixtures and small quantum algebras.

The manifold fixtures are the recurring examples the calculators are
exercised against.  Attraction edges and level values on the larger
fixtures are one consistent choice among the combinatorially valid ones;
everything downstream that depends on them (ordering, ideal ranks, dot
output) is relative to that choice.  ``synth_515`` deliberately violates
the unique-minimum rule: it is a single-chart weight model used for
index arithmetic only, so ``validate`` is expected to flag it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from cstarcalc.manifold import ManifoldData, parse_manifold
from cstarcalc.qalg import GradedAlgebra

__all__ = [
    "ALGEBRA_NAMES",
    "MANIFOLD_NAMES",
    "builtin_algebra",
    "builtin_fixture",
    "make_okm",
]


def _point(name: str, weights: dict[int, int], h: Any) -> dict[str, Any]:
    return {
        "name": name,
        "dim_c": 0,
        "betti": [1],
        "weights": {str(k): v for k, v in weights.items()},
        "h_value": h,
    }


def _sphere(name: str, weights: dict[int, int], h: Any) -> dict[str, Any]:
    return {
        "name": name,
        "dim_c": 1,
        "betti": [1, 0, 1],
        "weights": {str(k): v for k, v in weights.items()},
        "h_value": h,
    }


def _edge(source: str, target: str, weight: int) -> dict[str, Any]:
    return {"source": source, "target": target, "weight": weight}


def _arrow(component: str, order: int) -> dict[str, Any]:
    return {"component": component, "order": order}


def _s32() -> dict[str, Any]:
    return {
        "name": "s32",
        "dim_c": 4,
        "c1_zero": True,
        "csr_weight": 2,
        "components": [
            _point("F_big", {3: 2, -1: 2}, 2),
            _point("F_p", {5: 1, 3: 1, -3: 1, -1: 1}, 2),
            _point("F_w", {5: 1, 3: 1, -3: 1, -1: 1}, 2),
            _point("F_jp", {3: 2, -1: 2}, 2),
            _point("F_yp", {3: 2, -1: 2}, 2),
            _point("F_j3", {3: 1, 1: 2, -1: 1}, 1),
            _point("F_y3", {3: 1, 1: 2, -1: 1}, 1),
            _point("F_j1", {3: 1, 1: 2, -1: 1}, 1),
            _point("F_y1", {3: 1, 1: 2, -1: 1}, 1),
            _point("F_min", {1: 4}, 0),
        ],
        "edges": [
            _edge("F_min", "F_j3", 1),
            _edge("F_min", "F_y3", 1),
            _edge("F_min", "F_j1", 1),
            _edge("F_min", "F_y1", 1),
            _edge("F_j3", "F_big", 1),
            _edge("F_y3", "F_big", 1),
            _edge("F_j1", "F_jp", 1),
            _edge("F_y1", "F_yp", 1),
            _edge("F_j3", "F_p", 3),
            _edge("F_y3", "F_w", 3),
        ],
        "torsion_arrows": [
            _arrow("F_big", 3),
            _arrow("F_p", 5),
            _arrow("F_w", 5),
            _arrow("F_jp", 3),
            _arrow("F_yp", 3),
        ],
    }


def _a1_phi1() -> dict[str, Any]:
    return {
        "name": "a1_phi1",
        "dim_c": 2,
        "c1_zero": True,
        "components": [
            _point("p2", {1: 2}, 0),
            _point("p1", {3: 1, -1: 1}, 1),
        ],
        "edges": [_edge("p2", "p1", 1)],
        "torsion_arrows": [_arrow("p1", 3)],
    }


def _a1_phi2() -> dict[str, Any]:
    return {
        "name": "a1_phi2",
        "dim_c": 2,
        "c1_zero": True,
        "components": [
            _point("p2", {2: 1, 1: 1}, 0),
            _point("p1", {5: 1, -2: 1}, 1),
        ],
        "edges": [_edge("p2", "p1", 2)],
        "torsion_arrows": [_arrow("p1", 5)],
    }


def _a2_a() -> dict[str, Any]:
    return {
        "name": "a2_a",
        "dim_c": 2,
        "c1_zero": True,
        "csr_weight": 2,
        "components": [
            _point("p", {1: 2}, 0),
            _point("p1", {3: 1, -1: 1}, 1),
            _point("p2", {3: 1, -1: 1}, 1),
        ],
        "edges": [_edge("p", "p1", 1), _edge("p", "p2", 1)],
        "torsion_arrows": [_arrow("p1", 3), _arrow("p2", 3)],
    }


def _a2_b() -> dict[str, Any]:
    return {
        "name": "a2_b",
        "dim_c": 2,
        "c1_zero": True,
        "csr_weight": 1,
        "components": [
            _sphere("S2", {1: 1}, 0),
            _point("p2", {2: 1, -1: 1}, 1),
        ],
        "edges": [_edge("S2", "p2", 1)],
        "torsion_arrows": [_arrow("p2", 2)],
    }


def _a2_c() -> dict[str, Any]:
    return {
        "name": "a2_c",
        "dim_c": 2,
        "c1_zero": True,
        "csr_weight": 1,
        "components": [
            _sphere("S2", {1: 1}, 0),
            _point("p1", {2: 1, -1: 1}, 1),
        ],
        "edges": [_edge("S2", "p1", 1)],
        "torsion_arrows": [_arrow("p1", 2)],
    }


def _a3_ex59() -> dict[str, Any]:
    return {
        "name": "a3_ex59",
        "dim_c": 2,
        "c1_zero": True,
        "csr_weight": 1,
        "components": [
            _sphere("beta", {1: 1}, 0),
            _point("gamma", {2: 1, -1: 1}, 1),
            _point("alpha", {3: 1, -2: 1}, 2),
        ],
        "edges": [_edge("beta", "gamma", 1), _edge("gamma", "alpha", 2)],
        "torsion_arrows": [_arrow("alpha", 3)],
    }


def _a4_mckay() -> dict[str, Any]:
    return {
        "name": "a4_mckay",
        "dim_c": 2,
        "c1_zero": True,
        "csr_weight": 2,
        "components": [
            _point("leaf_l", {5: 1, -3: 1}, 2),
            _point("mid_l", {3: 1, -1: 1}, 1),
            _point("min", {1: 2}, 0),
            _point("mid_r", {3: 1, -1: 1}, 1),
            _point("leaf_r", {5: 1, -3: 1}, 2),
        ],
        "edges": [
            _edge("min", "mid_l", 1),
            _edge("min", "mid_r", 1),
            _edge("mid_l", "leaf_l", 3),
            _edge("mid_r", "leaf_r", 3),
        ],
        "torsion_arrows": [_arrow("leaf_l", 5), _arrow("leaf_r", 5)],
    }


def _synth_515() -> dict[str, Any]:
    return {
        "name": "synth_515",
        "dim_c": 8,
        "c1_zero": True,
        "components": [
            _point("F_alpha", {11: 3, -10: 3, 7: 1, -6: 1}, 0),
        ],
    }


_MANIFOLDS = {
    "s32": _s32,
    "a1_phi1": _a1_phi1,
    "a1_phi2": _a1_phi2,
    "a2_a": _a2_a,
    "a2_b": _a2_b,
    "a2_c": _a2_c,
    "a3_ex59": _a3_ex59,
    "a4_mckay": _a4_mckay,
    "synth_515": _synth_515,
}

MANIFOLD_NAMES = tuple(sorted(_MANIFOLDS))


def builtin_fixture(name: str) -> ManifoldData:
    """Return a bundled manifold fixture by name, freshly built."""
    if name not in _MANIFOLDS:
        raise KeyError(
            f"no fixture {name!r}; available: {', '.join(MANIFOLD_NAMES)}"
        )
    return parse_manifold(_MANIFOLDS[name]())


def make_okm(k: int, m: int) -> GradedAlgebra:
    """One-generator model algebra with relation x^(m+1) = (-k)^k T x^k.

    Basis 1, x, ..., x^m with deg x = 2; T has degree 2(1+m-k).  The
    distinguished class is -k times x.  Requires 1 <= k <= m so every
    reduction step lowers the exponent.
    """
    if not (1 <= k <= m):
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    coeff = Fraction((-k) ** k)
    step = 1 + m - k
    basis = [("1" if i == 0 else "x" if i == 1 else f"x^{i}", 2 * i) for i in range(m + 1)]
    products: dict[tuple[int, int], dict[int, Any]] = {}
    for i in range(m + 1):
        for j in range(i, m + 1):
            e = i + j
            c = Fraction(1)
            t_exp = 0
            while e > m:
                e -= step
                c *= coeff
                t_exp += 1
            products[(i, j)] = {e: {t_exp: c}}
    sign = "+" if k % 2 else "-"
    mag = k ** k
    xk = "x" if k == 1 else f"x^{k}"
    rel = f"x^{m + 1} {sign} {'' if mag == 1 else str(mag) + '*'}T*{xk}"
    return GradedAlgebra.create(
        name=f"okm_{k}_{m}",
        t_degree=2 * step,
        basis=basis,
        unit=0,
        products=products,
        classes={"Qphi": [0] * 1 + [-k] + [0] * (m - 1)},
        presentation=f"K[x]/({rel})",
    )


def _o11() -> GradedAlgebra:
    unit_products: dict[tuple[int, int], dict[int, Any]] = {
        (0, j): {j: {0: 1}} for j in range(4)
    }
    return GradedAlgebra.create(
        name="o11",
        t_degree=2,
        basis=[("1", 0), ("x1", 2), ("x2", 2), ("x1x2", 4)],
        unit=0,
        products={
            **unit_products,
            (1, 1): {1: {1: -1}, 2: {1: -1}},
            (2, 2): {1: {1: -1}, 2: {1: -1}},
            (1, 2): {3: {0: 1}},
            (1, 3): {1: {2: 1}, 2: {2: 1}, 3: {1: -1}},
            (2, 3): {1: {2: 1}, 2: {2: 1}, 3: {1: -1}},
            (3, 3): {1: {3: -2}, 2: {3: -2}, 3: {2: 2}},
        },
        classes={"negX": [0, -1, -1, 0]},
        presentation="K[x1,x2]/(x1^2 + T*x1 + T*x2, x2^2 + T*x1 + T*x2)",
    )


def _cp1xc() -> GradedAlgebra:
    return GradedAlgebra.create(
        name="cp1xc",
        t_degree=2,
        basis=[("1", 0), ("x", 2)],
        unit=0,
        products={
            (0, 0): {0: {0: 1}},
            (0, 1): {1: {0: 1}},
            (1, 1): {0: {2: 1}},
        },
        classes={"x3": [0, 0]},
        presentation="K[x]/(x^2 - T^2)",
    )


_ALGEBRAS = {
    "cp1xc": _cp1xc,
    "o11": _o11,
    "okm_1_1": lambda: make_okm(1, 1),
    "okm_1_2": lambda: make_okm(1, 2),
    "okm_2_3": lambda: make_okm(2, 3),
}

ALGEBRA_NAMES = tuple(sorted(_ALGEBRAS))


def builtin_algebra(name: str) -> GradedAlgebra:
    """Return a bundled quantum algebra by name, freshly built."""
    if name not in _ALGEBRAS:
        raise KeyError(
            f"no algebra {name!r}; available: {', '.join(ALGEBRA_NAMES)}"
        )
    return _ALGEBRAS[name]()
