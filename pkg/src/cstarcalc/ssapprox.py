"""Approximate first page of the slope spectral sequence.

The groups at consecutive slopes just above the outer periods differ by
generators created in even degree and generators killed one degree
below.  Rank differences alone determine both counts only up to a
common surplus r per even degree: r extra created plus r extra killed
cancel in every rank.  Each cell therefore carries a min..max range,
with the max capped by the smaller neighbouring rank, and further by
declared orbit-family sizes when those are available for the period.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from cstarcalc.findings import Finding
from cstarcalc.indices import cohomology_ranks, floer_ranks, outer_periods
from cstarcalc.manifold import ManifoldData
from cstarcalc.numerics import Side, Slope

__all__ = ["E1Approx", "E1Column", "approximate_e1"]


@dataclass
class E1Column:
    slope: Slope
    period: Fraction
    ranks: dict[int, int]
    cells: dict[int, tuple[int, int]]

    def cell(self, degree: int) -> tuple[int, int]:
        return self.cells.get(degree, (0, 0))


@dataclass
class E1Approx:
    manifold: str
    up_to: Fraction
    columns: list[E1Column]

    def column(self, period: Fraction) -> E1Column:
        for col in self.columns:
            if col.period == period:
                return col
        raise KeyError(f"no column at period {period}")

    def degrees(self) -> list[int]:
        seen = {d for col in self.columns for d in col.cells}
        return sorted(seen, reverse=True)

    def consistency_check(self) -> list[Finding]:
        out = []
        ok = True
        for prev, cur in zip(self.columns, self.columns[1:]):
            for d in set(prev.ranks) | set(cur.ranks):
                created = cur.cell(d)[0]
                killed = cur.cell(d - 1)[0]
                step = cur.ranks.get(d, 0) - prev.ranks.get(d, 0)
                ok = ok and created - killed == step
        out.append(
            Finding(
                "rank-step",
                ok,
                "created minus killed matches each rank difference",
            )
        )

        ok = True
        for prev, cur in zip(self.columns, self.columns[1:]):
            for d, (lo, _) in cur.cells.items():
                if d % 2 == 0:
                    continue
                drop = prev.ranks.get(d + 1, 0) - cur.ranks.get(d + 1, 0)
                ok = ok and lo == max(drop, 0)
        out.append(
            Finding(
                "odd-kills",
                ok,
                "each odd entry equals the rank drop one degree above",
            )
        )

        running = dict(self.columns[0].ranks)
        ok = True
        for col in self.columns[1:]:
            for d in list(set(running) | {d for d in col.cells if d % 2 == 0}):
                delta = col.cell(d)[0] - col.cell(d - 1)[0]
                running[d] = running.get(d, 0) + delta
            reached = {d: v for d, v in running.items() if v}
            ok = ok and reached == col.ranks
        out.append(
            Finding(
                "prefix-reconstruction",
                ok,
                "accumulating the minima reproduces every column's ranks",
            )
        )
        return out

    def _cell_text(self, col: E1Column, degree: int) -> str:
        if degree not in col.cells:
            return ""
        lo, hi = col.cells[degree]
        return str(lo) if lo == hi else f"{lo}..{hi}"

    def to_markdown(self) -> str:
        heads = [str(col.slope) for col in self.columns]
        lines = [f"# Approximate first page: {self.manifold}", ""]
        lines.append("| degree | " + " | ".join(heads) + " |")
        lines.append("| ---: |" + " ---: |" * len(heads))
        for d in self.degrees():
            cells = [self._cell_text(col, d) for col in self.columns]
            lines.append(f"| {d} | " + " | ".join(cells) + " |")
        lines.append("")
        return "\n".join(lines)

    def to_csv(self) -> str:
        lines = ["column,degree,min,max"]
        for col in self.columns:
            for d in sorted(col.cells, reverse=True):
                lo, hi = col.cells[d]
                lines.append(f"{col.slope},{d},{lo},{hi}")
        return "\n".join(lines) + "\n"


def approximate_e1(m: ManifoldData, up_to: Fraction) -> E1Approx:
    up_to = Fraction(up_to)
    base = Slope(Fraction(0), Side.ABOVE)
    ranks0 = cohomology_ranks(m)
    columns = [
        E1Column(
            slope=base,
            period=Fraction(0),
            ranks=ranks0,
            cells={d: (v, v) for d, v in ranks0.items()},
        )
    ]
    prev = ranks0
    for period in outer_periods(m, up_to):
        slope = Slope(period, Side.ABOVE)
        cur = floer_ranks(m, slope)
        even = sorted({d for d in set(prev) | set(cur)})
        mins: dict[int, int] = {}
        slack: dict[int, int] = {}
        for d in even:
            diff = cur.get(d, 0) - prev.get(d, 0)
            created = max(diff, 0)
            killed = max(-diff, 0)
            if created:
                mins[d] = created
            if killed:
                mins[d - 1] = killed
            slack[d] = min(prev.get(d, 0), cur.get(d, 0))

        budget = None
        families = [f for f in m.orbit_families if f.period == period]
        if families:
            total = sum(f.betti_total for f in families)
            budget = max((total - sum(mins.values())) // 2, 0)

        cells: dict[int, tuple[int, int]] = {}
        for d in even:
            r = slack[d] if budget is None else min(slack[d], budget)
            created = mins.get(d, 0)
            killed = mins.get(d - 1, 0)
            if created or r:
                cells[d] = (created, created + r)
            if killed or r:
                cells[d - 1] = (killed, killed + r)
        columns.append(
            E1Column(slope=slope, period=period, ranks=cur, cells=cells)
        )
        prev = cur
    return E1Approx(manifold=m.name, up_to=up_to, columns=columns)
