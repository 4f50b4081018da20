"""Weight data of a C*-manifold: schema, parsing, structural validation.

A manifold is described entirely by finite combinatorial data: its fixed
components with Betti numbers and normal weights, the attraction edges
and torsion arrows between them, and optionally Betti totals of periodic
orbit families.  Everything else in the package is computed from this.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Union

from cstarcalc.findings import Finding

__all__ = [
    "Component",
    "Edge",
    "ManifoldData",
    "ManifoldError",
    "OrbitFamily",
    "TorsionArrow",
    "builtin_fixture",
    "parse_manifold",
    "serialize_manifold",
    "validate",
]


class ManifoldError(ValueError):
    """Raised for malformed manifold descriptions."""


def _as_fraction(value: Any, what: str) -> Fraction:
    if isinstance(value, bool):
        raise ManifoldError(f"{what} must be rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ManifoldError(f"{what}: cannot parse rational {value!r}") from exc
    if isinstance(value, Fraction):
        return value
    raise ManifoldError(f"{what} must be rational, got {type(value).__name__}")


@dataclass
class Component:
    """One fixed component with its normal weight multiplicities.

    ``weights`` maps nonzero integers k to the multiplicity of the weight
    k directions in the normal bundle; the zero weight has multiplicity
    ``dim_c`` (the tangent directions) and is never stored explicitly.
    ``betti`` lists ranks by degree, 0 through 2*dim_c.
    """

    name: str
    dim_c: int
    betti: tuple[int, ...]
    weights: dict[int, int]
    h_value: Fraction
    outer_weights: tuple[int, ...] | None = None

    def h(self, k: int) -> int:
        """Multiplicity of the weight ``k``, including the tangent zero weight."""
        if k == 0:
            return self.dim_c
        return self.weights.get(k, 0)

    def betti_at(self, degree: int) -> int:
        if 0 <= degree < len(self.betti):
            return self.betti[degree]
        return 0

    def total_betti(self) -> int:
        return sum(self.betti)

    def weight_magnitudes(self) -> list[int]:
        return sorted({abs(k) for k in self.weights})

    def effective_outer_weights(self) -> tuple[int, ...]:
        """Declared outer weights, defaulting to all positive weights."""
        if self.outer_weights is not None:
            return self.outer_weights
        out: list[int] = []
        for k in sorted(self.weights):
            if k > 0:
                out.extend([k] * self.weights[k])
        return tuple(out)


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    weight: int


@dataclass(frozen=True)
class TorsionArrow:
    component: str
    order: int


@dataclass(frozen=True)
class OrbitFamily:
    period: Fraction
    betti_total: int


@dataclass
class ManifoldData:
    name: str
    dim_c: int
    c1_zero: bool
    components: tuple[Component, ...]
    edges: tuple[Edge, ...] = ()
    torsion_arrows: tuple[TorsionArrow, ...] = ()
    orbit_families: tuple[OrbitFamily, ...] = ()
    csr_weight: int | None = None

    def component(self, name: str) -> Component:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(f"no component named {name!r} in {self.name}")

    def component_names(self) -> list[str]:
        return [c.name for c in self.components]

    def minimal_component(self) -> Component:
        mins = [c for c in self.components if all(k > 0 for k in c.weights)]
        if len(mins) != 1:
            raise ManifoldError(
                f"{self.name}: expected exactly one component with all "
                f"positive weights, found {len(mins)}"
            )
        return mins[0]


_TOP_KEYS = {
    "name",
    "dim_c",
    "c1_zero",
    "csr_weight",
    "components",
    "edges",
    "torsion_arrows",
    "orbit_families",
}
_COMPONENT_KEYS = {"name", "dim_c", "betti", "weights", "h_value", "outer_weights"}
_EDGE_KEYS = {"source", "target", "weight"}
_ARROW_KEYS = {"component", "order"}
_FAMILY_KEYS = {"period", "betti_total"}


def _check_keys(obj: Mapping[str, Any], allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ManifoldError(f"unknown keys in {where}: {sorted(unknown)}")


def _require(obj: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in obj:
        raise ManifoldError(f"missing key {key!r} in {where}")
    return obj[key]


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ManifoldError(f"{what} must be an integer, got {value!r}")
    return value


def _parse_component(obj: Mapping[str, Any]) -> Component:
    if not isinstance(obj, Mapping):
        raise ManifoldError(f"component entry must be an object, got {obj!r}")
    name = _require(obj, "name", "component")
    where = f"component {name!r}"
    _check_keys(obj, _COMPONENT_KEYS, where)
    dim_c = _int(_require(obj, "dim_c", where), f"{where} dim_c")
    betti_raw = _require(obj, "betti", where)
    if not isinstance(betti_raw, (list, tuple)):
        raise ManifoldError(f"{where}: betti must be a list")
    betti = tuple(_int(b, f"{where} betti entry") for b in betti_raw)
    weights_raw = _require(obj, "weights", where)
    if not isinstance(weights_raw, Mapping):
        raise ManifoldError(f"{where}: weights must be an object")
    weights: dict[int, int] = {}
    for key, mult in weights_raw.items():
        try:
            k = int(key)
        except (TypeError, ValueError):
            raise ManifoldError(f"{where}: bad weight key {key!r}") from None
        weights[k] = _int(mult, f"{where} weight multiplicity")
    h_value = _as_fraction(_require(obj, "h_value", where), f"{where} h_value")
    outer = obj.get("outer_weights")
    outer_weights = None
    if outer is not None:
        if not isinstance(outer, (list, tuple)):
            raise ManifoldError(f"{where}: outer_weights must be a list")
        outer_weights = tuple(_int(k, f"{where} outer weight") for k in outer)
    return Component(
        name=str(name),
        dim_c=dim_c,
        betti=betti,
        weights=weights,
        h_value=h_value,
        outer_weights=outer_weights,
    )


def parse_manifold(source: Union[str, Mapping[str, Any]]) -> ManifoldData:
    """Build a ``ManifoldData`` from JSON text or an equivalent mapping.

    Structural problems (unknown keys, missing fields, malformed values)
    raise ``ManifoldError``; mathematical problems are left to
    ``validate`` so they can all be reported together.
    """
    if isinstance(source, str):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ManifoldError(f"invalid JSON: {exc}") from exc
    else:
        obj = source
    if not isinstance(obj, Mapping):
        raise ManifoldError("manifold description must be a JSON object")
    _check_keys(obj, _TOP_KEYS, "manifold")
    name = str(_require(obj, "name", "manifold"))
    dim_c = _int(_require(obj, "dim_c", "manifold"), "dim_c")
    c1_zero = _require(obj, "c1_zero", "manifold")
    if not isinstance(c1_zero, bool):
        raise ManifoldError("c1_zero must be a boolean")
    csr_weight = obj.get("csr_weight")
    if csr_weight is not None:
        csr_weight = _int(csr_weight, "csr_weight")
    components_raw = _require(obj, "components", "manifold")
    if not isinstance(components_raw, (list, tuple)) or not components_raw:
        raise ManifoldError("components must be a non-empty list")
    components = tuple(_parse_component(c) for c in components_raw)

    edges = []
    for e in obj.get("edges", []):
        _check_keys(e, _EDGE_KEYS, "edge")
        edges.append(
            Edge(
                source=str(_require(e, "source", "edge")),
                target=str(_require(e, "target", "edge")),
                weight=_int(_require(e, "weight", "edge"), "edge weight"),
            )
        )
    arrows = []
    for a in obj.get("torsion_arrows", []):
        _check_keys(a, _ARROW_KEYS, "torsion arrow")
        arrows.append(
            TorsionArrow(
                component=str(_require(a, "component", "torsion arrow")),
                order=_int(_require(a, "order", "torsion arrow"), "arrow order"),
            )
        )
    families = []
    for f in obj.get("orbit_families", []):
        _check_keys(f, _FAMILY_KEYS, "orbit family")
        families.append(
            OrbitFamily(
                period=_as_fraction(_require(f, "period", "orbit family"), "period"),
                betti_total=_int(
                    _require(f, "betti_total", "orbit family"), "betti_total"
                ),
            )
        )
    return ManifoldData(
        name=name,
        dim_c=dim_c,
        c1_zero=c1_zero,
        components=components,
        edges=tuple(edges),
        torsion_arrows=tuple(arrows),
        orbit_families=tuple(families),
        csr_weight=csr_weight,
    )


def _fraction_json(x: Fraction) -> Union[int, str]:
    return int(x) if x.denominator == 1 else str(x)


def serialize_manifold(m: ManifoldData) -> dict[str, Any]:
    """Inverse of ``parse_manifold`` up to key order."""
    out: dict[str, Any] = {
        "name": m.name,
        "dim_c": m.dim_c,
        "c1_zero": m.c1_zero,
        "components": [],
        "edges": [
            {"source": e.source, "target": e.target, "weight": e.weight}
            for e in m.edges
        ],
        "torsion_arrows": [
            {"component": a.component, "order": a.order} for a in m.torsion_arrows
        ],
        "orbit_families": [
            {"period": _fraction_json(f.period), "betti_total": f.betti_total}
            for f in m.orbit_families
        ],
    }
    if m.csr_weight is not None:
        out["csr_weight"] = m.csr_weight
    for c in m.components:
        entry: dict[str, Any] = {
            "name": c.name,
            "dim_c": c.dim_c,
            "betti": list(c.betti),
            "weights": {str(k): v for k, v in sorted(c.weights.items())},
            "h_value": _fraction_json(c.h_value),
        }
        if c.outer_weights is not None:
            entry["outer_weights"] = list(c.outer_weights)
        out["components"].append(entry)
    return out


def _maslov_of(c: Component) -> int:
    return sum(k * h for k, h in c.weights.items())


def validate(m: ManifoldData) -> list[Finding]:
    """Structural checks on the component data.

    Graph-level rules (edge compatibility, acyclicity, torsion arrows,
    chain sums) live in ``cstarcalc.graph.validate_graph``; running both
    gives the full checklist.
    """
    out: list[Finding] = []

    names = m.component_names()
    dup = sorted({n for n in names if names.count(n) > 1})
    out.append(
        Finding(
            "component-names-unique",
            not dup,
            f"duplicated: {dup}" if dup else f"{len(names)} components",
        )
    )

    bad_betti = [
        c.name
        for c in m.components
        if len(c.betti) != 2 * c.dim_c + 1 or any(b < 0 for b in c.betti)
    ]
    out.append(
        Finding(
            "betti-shape",
            not bad_betti,
            f"expected 2*dim_c+1 nonnegative ranks: {bad_betti}"
            if bad_betti
            else "ranks listed degree 0 through 2*dim_c",
        )
    )

    bad_weights = [
        c.name
        for c in m.components
        if 0 in c.weights or any(h < 1 for h in c.weights.values())
    ]
    out.append(
        Finding(
            "weights-nonzero",
            not bad_weights,
            f"zero weight keys or empty multiplicities: {bad_weights}"
            if bad_weights
            else "all stored weights nonzero with positive multiplicity",
        )
    )

    bad_dim = [
        f"{c.name} ({c.dim_c}+{sum(c.weights.values())})"
        for c in m.components
        if c.dim_c + sum(c.weights.values()) != m.dim_c
    ]
    out.append(
        Finding(
            "dimension-sum",
            not bad_dim,
            f"dim_c + sum of multiplicities must equal {m.dim_c}: {bad_dim}"
            if bad_dim
            else f"every component fills dimension {m.dim_c}",
        )
    )

    mins = [c.name for c in m.components if all(k > 0 for k in c.weights)]
    out.append(
        Finding(
            "unique-minimum",
            len(mins) == 1,
            f"components with all-positive weights: {mins or 'none'}",
        )
    )
    if len(mins) == 1:
        min_h = m.component(mins[0]).h_value
        not_above = [
            c.name for c in m.components if c.name != mins[0] and c.h_value <= min_h
        ]
        out.append(
            Finding(
                "minimum-h-least",
                not not_above,
                f"h_value not above the minimum's: {not_above}"
                if not_above
                else f"minimum {mins[0]} has strictly least h_value",
            )
        )

    if m.c1_zero:
        maslovs = sorted({_maslov_of(c) for c in m.components})
        ok = len(maslovs) == 1 and maslovs[0] > 0
        out.append(
            Finding(
                "maslov-constant-positive",
                ok,
                f"weight sums per component: {maslovs}",
            )
        )

    if m.csr_weight is not None:
        s = m.csr_weight
        broken: list[str] = []
        for c in m.components:
            ks = set(c.weights) | {0} | {s - k for k in c.weights} | {s}
            if any(c.h(k) != c.h(s - k) for k in ks):
                broken.append(c.name)
        out.append(
            Finding(
                "csr-duality",
                not broken,
                f"h_k != h_(s-k) for: {broken}"
                if broken
                else f"weight multiplicities symmetric about s={s}",
            )
        )

    bad_fam = [
        str(f.period)
        for f in m.orbit_families
        if f.period <= 0 or f.betti_total < 0
    ]
    out.append(
        Finding(
            "orbit-families-sane",
            not bad_fam,
            f"bad periods or totals: {bad_fam}"
            if bad_fam
            else f"{len(m.orbit_families)} families",
        )
    )

    bad_outer = []
    for c in m.components:
        if c.outer_weights is None:
            continue
        counts: dict[int, int] = {}
        for k in c.outer_weights:
            counts[k] = counts.get(k, 0) + 1
        if any(k < 1 or counts[k] > c.h(k) for k in counts):
            bad_outer.append(c.name)
    out.append(
        Finding(
            "outer-weights-supported",
            not bad_outer,
            f"outer weights exceed stored multiplicities: {bad_outer}"
            if bad_outer
            else "outer weights within declared positive weights",
        )
    )

    return out


def builtin_fixture(name: str):
    """Return a bundled example manifold by name.

    Available: s32, a1_phi1, a1_phi2, a2_a, a2_b, a2_c, a3_ex59,
    a4_mckay, synth_515.
    """
    from cstarcalc import fixtures

    return fixtures.builtin_fixture(name)
