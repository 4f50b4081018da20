"""Index computations for twisted rotations of a weighted C*-manifold.

Everything here is elementary arithmetic on the stored weight
multiplicities: Morse-Bott indices, slope-dependent indices of fixed
components, degree-wise rank tables, critical and outer periods, and
the window bookkeeping that tracks how indices move across a short
interval of slopes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from cstarcalc.manifold import Component, ManifoldData
from cstarcalc.numerics import IntervalSpec, Side, Slope, c_count, n_count, w_at

__all__ = [
    "IndexTable",
    "WindowJump",
    "cohomology_ranks",
    "compatibly_weighted",
    "critical_times",
    "csr_index_shortcut",
    "f_weight",
    "floer_ranks",
    "index_at",
    "index_table",
    "is_m_minimal",
    "lambda_alpha",
    "maslov",
    "morse_bott_index",
    "outer_periods",
    "p_stable_period",
    "window_jump",
]


def maslov(m: ManifoldData) -> int:
    """Sum of weights of a component; constant when c1 vanishes."""
    c = m.components[0]
    return sum(k * h for k, h in c.weights.items())


def morse_bott_index(c: Component) -> int:
    """Twice the number of negative normal directions."""
    return 2 * sum(h for k, h in c.weights.items() if k < 0)


def index_at(c: Component, s: Slope) -> int:
    """Index of the constant orbit at the component for a given slope."""
    return sum((1 - w_at(s, k)) * h for k, h in c.weights.items())


def lambda_alpha(c: Component) -> Fraction:
    """First slope at which the component's index moves.

    This is the reciprocal of the largest weight magnitude; below it the
    index still equals the Morse-Bott index.
    """
    mags = c.weight_magnitudes()
    if not mags:
        raise ValueError(f"component {c.name} has no nonzero weights")
    return Fraction(1, mags[-1])


def cohomology_ranks(m: ManifoldData) -> dict[int, int]:
    """Degree-wise ranks of the ambient space, summed over components."""
    out: dict[int, int] = {}
    for c in m.components:
        mu = morse_bott_index(c)
        for d, b in enumerate(c.betti):
            if b:
                out[mu + d] = out.get(mu + d, 0) + b
    return dict(sorted(out.items()))


def floer_ranks(m: ManifoldData, s: Slope) -> dict[int, int]:
    """Degree-wise ranks at a slope, each component shifted by its index."""
    out: dict[int, int] = {}
    for c in m.components:
        mu = index_at(c, s)
        for d, b in enumerate(c.betti):
            if b:
                out[mu + d] = out.get(mu + d, 0) + b
    return dict(sorted(out.items()))


@dataclass
class IndexTable:
    """Indices of every component at every requested slope."""

    manifold: str
    slopes: tuple[Slope, ...]
    components: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def entry(self, component: str, slope: Slope) -> int:
        i = self.components.index(component)
        j = self.slopes.index(slope)
        return self.entries[i][j]

    def column(self, slope: Slope) -> dict[str, int]:
        j = self.slopes.index(slope)
        return {c: self.entries[i][j] for i, c in enumerate(self.components)}

    def to_csv(self) -> str:
        lines = ["component," + ",".join(str(s) for s in self.slopes)]
        for i, c in enumerate(self.components):
            lines.append(c + "," + ",".join(str(x) for x in self.entries[i]))
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        header = "| slope | " + " | ".join(self.components) + " |"
        rule = "| --- |" + " ---: |" * len(self.components)
        lines = [header, rule]
        for j, s in enumerate(self.slopes):
            row = [str(self.entries[i][j]) for i in range(len(self.components))]
            lines.append(f"| {s} | " + " | ".join(row) + " |")
        return "\n".join(lines) + "\n"


def index_table(m: ManifoldData, slopes: Sequence[Slope]) -> IndexTable:
    comps = m.component_names()
    entries = tuple(
        tuple(index_at(m.component(c), s) for s in slopes) for c in comps
    )
    return IndexTable(
        manifold=m.name,
        slopes=tuple(slopes),
        components=tuple(comps),
        entries=entries,
    )


def critical_times(
    m: ManifoldData, up_to: Fraction
) -> list[tuple[Fraction, list[str]]]:
    """Times where some component's index can move, with the movers.

    A component moves at j/|k| for each of its weights k; times are
    listed ascending up to and including ``up_to``.
    """
    hits: dict[Fraction, set[str]] = {}
    for c in m.components:
        for mag in {abs(k) for k in c.weights}:
            j = 1
            while Fraction(j, mag) <= up_to:
                hits.setdefault(Fraction(j, mag), set()).add(c.name)
                j += 1
    return [(t, sorted(hits[t])) for t in sorted(hits)]


def outer_periods(m: ManifoldData, up_to: Fraction) -> list[Fraction]:
    """Periods of outer orbit families, ascending, up to the cutoff."""
    periods: set[Fraction] = set()
    for c in m.components:
        for k in set(c.effective_outer_weights()):
            j = 1
            while Fraction(j, k) <= up_to:
                periods.add(Fraction(j, k))
                j += 1
    return sorted(periods)


def f_weight(c: Component, mag: int) -> int:
    """Signed multiplicity h(+mag) - h(-mag) for a positive magnitude."""
    if mag <= 0:
        raise ValueError("weight magnitude must be positive")
    return c.h(mag) - c.h(-mag)


def compatibly_weighted(c: Component) -> bool:
    """Partial sums of signed multiplicities stay nonnegative.

    Magnitudes are scanned from largest to smallest; the running total
    of h(+m) - h(-m) must never go negative.
    """
    total = 0
    for mag in reversed(c.weight_magnitudes()):
        total += f_weight(c, mag)
        if total < 0:
            return False
    return True


@dataclass
class WindowJump:
    """Index movement of one component across a closed slope window.

    ``terms`` maps each weight magnitude to (crossing count, signed
    multiplicity, product); the products sum to ``drop``.  ``tallies``
    lists, for each order at least 2 dividing some weight whose
    dilated window meets the integers, half the primitive lattice
    count of the dilated window.
    """

    component: str
    window: IntervalSpec
    index_before: int
    index_after: int
    drop: int
    jump: int
    terms: dict[int, tuple[int, int, int]]
    tallies: dict[int, Fraction]


def window_jump(c: Component, m: int, p: int) -> WindowJump:
    """Track the index of a component over the window [p/m, (p+1)/m]."""
    if m < 1 or p < 0:
        raise ValueError("window needs m >= 1 and p >= 0")
    window = IntervalSpec.closed(Fraction(p, m), Fraction(p + 1, m))
    before = index_at(c, Slope(Fraction(p, m)))
    after = index_at(c, Slope(Fraction(p + 1, m)))
    terms: dict[int, tuple[int, int, int]] = {}
    for mag in c.weight_magnitudes():
        crossings = n_count(mag, window)
        signed = f_weight(c, mag)
        terms[mag] = (crossings, signed, crossings * signed)
    tallies: dict[int, Fraction] = {}
    divisors: set[int] = set()
    for mag in c.weight_magnitudes():
        divisors.update(d for d in range(2, mag + 1) if mag % d == 0)
    for d in sorted(divisors):
        if n_count(d, window) > 0:
            tallies[d] = Fraction(c_count(d, window), 2)
    return WindowJump(
        component=c.name,
        window=window,
        index_before=before,
        index_after=after,
        drop=before - after,
        jump=after - before,
        terms=terms,
        tallies=tallies,
    )


def csr_index_shortcut(c: Component, s: int, i: int) -> int:
    """Index just above slope i/s for weight data symmetric about s.

    Only the multiplicities strictly between 0 and s enter through the
    staircase function; the rest contribute linearly in i.  Agrees with
    ``index_at`` at the slope (i/s)+ whenever the symmetry holds.
    """
    if s < 1 or i < 0:
        raise ValueError("need s >= 1 and i >= 0")
    slope = Slope(Fraction(i, s), Side.ABOVE)
    partial = sum(
        (1 - w_at(slope, k)) * c.h(k) for k in range(1, s)
    )
    above = sum(h for k, h in c.weights.items() if k > s)
    return partial - i * 2 * c.dim_c - (2 * i - 2) * above


def p_stable_period(m: ManifoldData) -> Fraction:
    """Reciprocal of the largest weight magnitude anywhere."""
    mags = [mag for c in m.components for mag in c.weight_magnitudes()]
    if not mags:
        raise ValueError("no nonzero weights anywhere")
    return Fraction(1, max(mags))


def is_m_minimal(c: Component, order: int) -> bool:
    """Some weight is divisible by the order and all such are positive."""
    if order < 1:
        raise ValueError("order must be positive")
    divisible = [k for k in c.weights if k % order == 0]
    return bool(divisible) and all(k > 0 for k in divisible)
