"""Attraction-graph diagnostics.

The components form a directed graph: an edge of weight k records a
family of gradient spheres flowing from one component into another,
and a torsion arrow records a cyclic isotropy sink.  The checks here
catch the usual encoding mistakes (dangling names, unsupported weights,
cycles, missing arrows) and, when a rotational symmetry weight is
declared and the graph is a chain, verify the per-vertex weight sums
against it.  The remaining helpers order components by their height,
emit the descending chain of graded ranks, render DOT, and compare
torus actions through a fan of weight vectors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from cstarcalc.findings import Finding
from cstarcalc.indices import is_m_minimal, morse_bott_index
from cstarcalc.manifold import ManifoldData

__all__ = [
    "ab_ideal_ranks",
    "ab_order",
    "action_compare_k",
    "to_dot",
    "validate_graph",
]


def _weak_components(names: list[str], pairs: list[tuple[str, str]]) -> int:
    parent = {n: n for n in names}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(n) for n in names})


def _has_cycle(names: list[str], pairs: list[tuple[str, str]]) -> bool:
    out: dict[str, list[str]] = {n: [] for n in names}
    indeg = {n: 0 for n in names}
    for a, b in pairs:
        out[a].append(b)
        indeg[b] += 1
    queue = [n for n in names if indeg[n] == 0]
    seen = 0
    while queue:
        n = queue.pop()
        seen += 1
        for b in out[n]:
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    return seen != len(names)


def _is_simple_path(names: list[str], pairs: list[tuple[str, str]]) -> bool:
    if len(pairs) != len(names) - 1:
        return False
    if _weak_components(names, pairs) != 1:
        return False
    degree = {n: 0 for n in names}
    for a, b in pairs:
        degree[a] += 1
        degree[b] += 1
    ends = [n for n in names if degree[n] == 1]
    return len(names) == 1 or (
        len(ends) == 2 and all(degree[n] == 2 for n in names if n not in ends)
    )


def validate_graph(m: ManifoldData) -> list[Finding]:
    findings = []
    names = [c.name for c in m.components]
    by_name = {c.name: c for c in m.components}
    pairs = [(e.source, e.target) for e in m.edges]

    bad = [
        f"{e.source}->{e.target}"
        for e in m.edges
        if e.source not in by_name or e.target not in by_name
    ]
    findings.append(
        Finding(
            "edge-endpoints",
            not bad,
            "all edges join declared components"
            if not bad
            else f"unknown endpoints: {', '.join(bad)}",
        )
    )
    if bad:
        return findings

    unsupported = [
        f"{e.source}->{e.target} (+{e.weight})"
        for e in m.edges
        if by_name[e.source].h(e.weight) < 1 or by_name[e.target].h(-e.weight) < 1
    ]
    findings.append(
        Finding(
            "edge-weight-support",
            not unsupported,
            "each edge weight appears at both ends"
            if not unsupported
            else f"unsupported: {', '.join(unsupported)}",
        )
    )

    rising = all(
        by_name[e.source].h_value < by_name[e.target].h_value for e in m.edges
    )
    findings.append(
        Finding("edge-h-monotone", rising, "edges climb strictly in height")
    )

    findings.append(
        Finding("acyclic", not _has_cycle(names, pairs), "no directed cycles")
    )
    findings.append(
        Finding(
            "connected",
            _weak_components(names, pairs) == 1,
            "components form one connected diagram",
        )
    )

    bad_arrows = [
        f"{a.component} (order {a.order})"
        for a in m.torsion_arrows
        if a.component not in by_name
        or not is_m_minimal(by_name[a.component], a.order)
    ]
    findings.append(
        Finding(
            "arrow-m-minimal",
            not bad_arrows,
            "each torsion arrow sits on a component of matching order"
            if not bad_arrows
            else f"misplaced: {', '.join(bad_arrows)}",
        )
    )

    with_out = {e.source for e in m.edges}
    arrowed = {a.component for a in m.torsion_arrows}
    missing = [
        c.name
        for c in m.components
        if c.name not in with_out
        and max((k for k in c.weights if k > 0), default=0) >= 2
        and c.name not in arrowed
    ]
    findings.append(
        Finding(
            "csr-leaf-arrows",
            not missing,
            "every sink with a repeated rotation carries an arrow"
            if not missing
            else f"arrowless sinks: {', '.join(missing)}",
        )
    )

    if m.csr_weight is not None and _is_simple_path(names, pairs):
        sums = {}
        for c in m.components:
            total = sum(a.order for a in m.torsion_arrows if a.component == c.name)
            total += sum(e.weight for e in m.edges if e.source == c.name)
            total -= sum(e.weight for e in m.edges if e.target == c.name)
            sums[c.name] = total
        off = [n for n, v in sums.items() if v != m.csr_weight]
        findings.append(
            Finding(
                "csr-chain-sums",
                not off,
                f"signed weight sum at every vertex equals {m.csr_weight}"
                if not off
                else f"mismatched vertices: {', '.join(sorted(off))}",
            )
        )
    return findings


def ab_order(m: ManifoldData) -> list[list[str]]:
    """Component names grouped by height, lowest level first."""
    levels: dict[Fraction, list[str]] = {}
    for c in m.components:
        levels.setdefault(c.h_value, []).append(c.name)
    return [sorted(levels[v]) for v in sorted(levels)]


def ab_ideal_ranks(m: ManifoldData) -> list[dict[int, int]]:
    """Graded ranks of the descending chain cut out by the height levels."""
    values = sorted({c.h_value for c in m.components})
    chain = []
    for v in values:
        ranks: dict[int, int] = {}
        for c in m.components:
            if c.h_value < v:
                continue
            mu = morse_bott_index(c)
            for d, b in enumerate(c.betti):
                if b:
                    ranks[mu + d] = ranks.get(mu + d, 0) + b
        chain.append(dict(sorted(ranks.items())))
    chain.append({})
    return chain


def to_dot(m: ManifoldData) -> str:
    lines = [f'digraph "{m.name}" {{']
    for name in sorted(c.name for c in m.components):
        lines.append(f'  "{name}";')
    for e in sorted(m.edges, key=lambda e: (e.source, e.target, e.weight)):
        lines.append(f'  "{e.source}" -> "{e.target}" [label="+{e.weight}"];')
    for a in sorted(m.torsion_arrows, key=lambda a: (a.component, a.order)):
        sink = f"{a.component}__torsion"
        lines.append(f'  "{sink}" [label="Z/{a.order}", shape=plaintext];')
        lines.append(f'  "{a.component}" -> "{sink}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def action_compare_k(
    v: Sequence[int],
    vprime: Sequence[int],
    weight_vectors: Iterable[Sequence[int]],
) -> Fraction:
    """Smallest ratio of pairings of the two vectors over the weight fan."""
    best = None
    for w in weight_vectors:
        if len(w) != len(v) or len(w) != len(vprime):
            raise ValueError("weight vector length mismatch")
        num = sum(Fraction(a) * b for a, b in zip(v, w))
        den = sum(Fraction(a) * b for a, b in zip(vprime, w))
        if den <= 0 or num <= 0:
            raise ValueError("pairings must stay positive across the fan")
        ratio = num / den
        best = ratio if best is None else min(best, ratio)
    if best is None:
        raise ValueError("need at least one weight vector")
    return best
