"""Rank bounds for the growing invariant subspace of the quantum algebra.

As the slope passes the periods of outer orbit families, a graded
subspace accumulates inside the total cohomology.  Its degree-wise
dimensions are rarely computable outright, but several independent
arguments pin them into an interval on each window between consecutive
periods: rank deficits of the slope-dependent groups from below,
exclusion and stability caps from above, symmetry and full-rotation
arguments for exactness.  ``bound_report`` runs all of them and
reconciles the results; ``family_homology_bounds`` packages the deficit
statistics that constrain the homology of a single orbit family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from cstarcalc.manifold import ManifoldData, ManifoldError
from cstarcalc.indices import (
    cohomology_ranks,
    critical_times,
    floer_ranks,
    lambda_alpha,
    maslov,
    morse_bott_index,
    outer_periods,
    p_stable_period,
)
from cstarcalc.numerics import Side, Slope

__all__ = [
    "BoundReport",
    "BoundsError",
    "DegreeBound",
    "FamilyHomologyBounds",
    "WindowBounds",
    "bound_report",
    "delta_at",
    "delta_polyline",
    "delta_ranks",
    "family_homology_bounds",
]


class BoundsError(ValueError):
    """Raised when independent bounds contradict each other."""


def delta_ranks(m: ManifoldData, s: Slope) -> dict[int, int]:
    """Degree-wise rank deficit relative to the slope-zero groups."""
    total = cohomology_ranks(m)
    at_slope = floer_ranks(m, s)
    degrees = sorted(set(total) | set(at_slope))
    return {k: total.get(k, 0) - at_slope.get(k, 0) for k in degrees}


def delta_at(m: ManifoldData, s: Slope, degree: int) -> int:
    return delta_ranks(m, s).get(degree, 0)


def delta_polyline(
    m: ManifoldData, degree: int, up_to: Fraction
) -> list[tuple[Fraction, int]]:
    """Deficit sampled just above each critical time, starting at (0, 0)."""
    points = [(Fraction(0), 0)]
    for t, _ in critical_times(m, up_to):
        points.append((t, delta_at(m, Slope(t, Side.ABOVE), degree)))
    return points


@dataclass
class FamilyHomologyBounds:
    """Deficit statistics constraining one orbit family's homology.

    For an even degree d = 2k, write r for the free parameter.  The
    family's space has odd-degree rank ``kappa`` + r and even-degree
    rank ``delta_minus`` + r with r between ``r_min`` and ``r_max``;
    the invariant subspace just below the period holds at least
    r + ``delta_before`` in degree d.  A negative ``r_max`` means the
    constraints at this period and degree admit no family contribution,
    so the coupled bounds are vacuous there.
    """

    period: Fraction
    degree: int
    delta_plus: int
    delta_minus: int
    delta_before: int
    delta_after: int
    kappa: int
    r_min: int
    r_max: int


def family_homology_bounds(
    m: ManifoldData, period: Fraction, degree: int
) -> FamilyHomologyBounds:
    period = Fraction(period)
    if period not in outer_periods(m, period):
        raise BoundsError(f"{period} is not an outer period of {m.name}")
    crits = [t for t, _ in critical_times(m, period)]

    delta_before = delta_at(m, Slope(period, Side.BELOW), degree)
    delta_after = delta_at(m, Slope(period, Side.ABOVE), degree)

    delta_plus = 0
    for t in crits:
        delta_plus = max(delta_plus, delta_at(m, Slope(t, Side.AT), degree))
        if t < period:
            delta_plus = max(delta_plus, delta_at(m, Slope(t, Side.ABOVE), degree))

    delta_minus = 0
    for t in crits:
        before = delta_at(m, Slope(t, Side.BELOW), degree)
        after = delta_at(m, Slope(t, Side.ABOVE), degree)
        delta_minus += max(before - after, 0)

    kappa = delta_minus + delta_after
    r_max = cohomology_ranks(m).get(degree, 0) - delta_before - kappa
    return FamilyHomologyBounds(
        period=period,
        degree=degree,
        delta_plus=delta_plus,
        delta_minus=delta_minus,
        delta_before=delta_before,
        delta_after=delta_after,
        kappa=kappa,
        r_min=0,
        r_max=r_max,
    )


@dataclass
class DegreeBound:
    lower: int
    upper: int
    rules: tuple[str, ...]

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


@dataclass
class WindowBounds:
    start: Fraction
    end: Fraction | None
    degrees: dict[int, DegreeBound]
    total_lower: int
    total_upper: int
    cap_rules: tuple[str, ...]

    @property
    def exact(self) -> bool:
        return all(b.exact for b in self.degrees.values())

    def label(self) -> str:
        hi = "inf" if self.end is None else str(self.end)
        return f"[{self.start}, {hi})"


@dataclass
class BoundReport:
    manifold: str
    up_to: Fraction
    windows: list[WindowBounds]

    def jumps(self) -> list[Fraction]:
        """Window starts where the guaranteed total strictly increases."""
        out = []
        prev = 0
        for w in self.windows:
            if w.total_lower > prev:
                out.append(w.start)
            prev = w.total_lower
        return out

    def window_at(self, value: Fraction) -> WindowBounds:
        for w in self.windows:
            if value >= w.start and (w.end is None or value < w.end):
                return w
        raise KeyError(f"no window contains {value}")

    def to_markdown(self) -> str:
        lines = [f"# Rank bounds: {self.manifold}", ""]
        for w in self.windows:
            total = (
                str(w.total_lower)
                if w.total_lower == w.total_upper
                else f"{w.total_lower}..{w.total_upper}"
            )
            lines.append(f"## Window {w.label()} (total {total})")
            lines.append("")
            lines.append("| degree | lower | upper | rules |")
            lines.append("| ---: | ---: | ---: | --- |")
            for k in sorted(w.degrees, reverse=True):
                b = w.degrees[k]
                lines.append(
                    f"| {k} | {b.lower} | {b.upper} | {', '.join(b.rules)} |"
                )
            lines.append("")
        return "\n".join(lines)

    def to_csv(self) -> str:
        lines = ["window_start,window_end,degree,lower,upper,rules"]
        for w in self.windows:
            hi = "" if w.end is None else str(w.end)
            for k in sorted(w.degrees, reverse=True):
                b = w.degrees[k]
                lines.append(
                    f"{w.start},{hi},{k},{b.lower},{b.upper},{';'.join(b.rules)}"
                )
            lines.append(
                f"{w.start},{hi},total,{w.total_lower},{w.total_upper},"
                f"{';'.join(w.cap_rules)}"
            )
        return "\n".join(lines) + "\n"


class _WindowState:
    def __init__(self, start: Fraction, end: Fraction | None, ranks: dict[int, int]):
        self.start = start
        self.end = end
        self.lower = {k: 0 for k in ranks}
        self.upper = dict(ranks)
        self.cap = sum(ranks.values())
        self.rules: dict[int, list[str]] = {k: [] for k in ranks}
        self.cap_rules: list[str] = []

    @property
    def bounded(self) -> bool:
        return self.end is not None

    def note(self, k: int, rule: str) -> None:
        if rule not in self.rules[k]:
            self.rules[k].append(rule)

    def note_cap(self, rule: str) -> None:
        if rule not in self.cap_rules:
            self.cap_rules.append(rule)

    def raise_lower(self, k: int, value: int, rule: str) -> None:
        if value > self.lower[k]:
            self.lower[k] = value
            self.note(k, rule)

    def cut_upper(self, k: int, value: int, rule: str) -> None:
        if value < self.upper[k]:
            self.upper[k] = value
            self.note(k, rule)

    def cut_cap(self, value: int, rule: str) -> None:
        if value < self.cap:
            self.cap = value
            self.note_cap(rule)

    def make_full(self, ranks: dict[int, int], rule: str) -> None:
        for k, r in ranks.items():
            self.raise_lower(k, r, rule)


def bound_report(m: ManifoldData, up_to: Fraction) -> BoundReport:
    """Window-by-window rank bounds up to the requested slope."""
    up_to = Fraction(up_to)
    ranks = cohomology_ranks(m)
    if not ranks:
        raise BoundsError("no cohomology to bound")
    top_degree = max(k for k, v in ranks.items() if v)
    mu = maslov(m)

    periods = outer_periods(m, up_to)
    starts = [Fraction(0)] + periods
    windows = [
        _WindowState(s, starts[i + 1] if i + 1 < len(starts) else None, ranks)
        for i, s in enumerate(starts)
    ]

    crits = [t for t, _ in critical_times(m, up_to)]

    try:
        minimum = m.minimal_component()
    except ManifoldError:
        minimum = None
    if minimum is not None:
        lam_min = lambda_alpha(minimum)
        exclusion = {
            k: sum(
                c.betti_at(k - morse_bott_index(c))
                for c in m.components
                if c.name != minimum.name
            )
            for k in ranks
        }

    p_period = p_stable_period(m)
    p_cap = sum(
        c.total_betti() for c in m.components if lambda_alpha(c) == p_period
    )

    family_periods = {f.period for f in m.orbit_families}

    for w in windows:
        if w.start == 0 and w.bounded:
            for k in ranks:
                w.cut_upper(k, 0, "before-first-period")
            w.cut_cap(0, "before-first-period")
            continue

        samples = [t for t in crits if t <= w.start]
        if w.bounded:
            samples += [t for t in crits if w.start < t < w.end]
        for t in samples:
            deficits = delta_ranks(m, Slope(t, Side.ABOVE))
            for k in ranks:
                w.raise_lower(k, max(deficits.get(k, 0), 0), "delta-lower")

        if minimum is not None and w.bounded and w.end <= lam_min:
            for k in ranks:
                w.cut_upper(k, exclusion[k], "min-exclusion")

        if w.bounded and w.start <= p_period:
            w.cut_cap(p_cap, "p-stable-cap")

        if m.orbit_families and w.bounded:
            needed = [p for p in periods if p <= w.start]
            if needed and all(p in family_periods for p in needed):
                covered = sum(
                    f.betti_total for f in m.orbit_families if f.period <= w.start
                )
                w.cut_cap(covered // 2, "orbit-cap")

        s = m.csr_weight
        if s is not None and s >= 2:
            reach = Fraction(1, s)
            if w.start >= reach or (w.bounded and w.end > reach):
                for k in ranks:
                    if k >= 2:
                        w.raise_lower(k, ranks[k], "csr-lower")
            if w.start >= Fraction(2, s):
                w.make_full(ranks, "csr-exact")
        if s == 1:
            if w.start >= 1 and (w.bounded and w.end <= 2):
                for k in ranks:
                    if k >= 2:
                        w.raise_lower(k, ranks[k], "csr-exact")
                        w.cut_upper(k, ranks[k], "csr-exact")
                    else:
                        w.cut_upper(k, 0, "csr-exact")
            if w.start >= 2:
                w.make_full(ranks, "csr-exact")

        turns = int(w.start) if w.start >= 1 else 0
        if turns >= 1:
            shift = 2 * turns * mu
            for k in ranks:
                w.raise_lower(k, ranks[k] - ranks.get(k + shift, 0), "full-rotation")
                if k >= top_degree + 1 - shift:
                    w.raise_lower(k, ranks[k], "full-rotation")
                    w.cut_upper(k, ranks[k], "full-rotation")

    for _ in range(3):
        for i in range(1, len(windows)):
            prev, cur = windows[i - 1], windows[i]
            for k in ranks:
                cur.raise_lower(k, prev.lower[k], "carried")
        for i in range(len(windows) - 2, -1, -1):
            cur, nxt = windows[i], windows[i + 1]
            for k in ranks:
                cur.cut_upper(k, nxt.upper[k], "carried")
            cur.cut_cap(nxt.cap, "carried")
        for w in windows:
            if ranks.get(0, 0) == 1 and w.lower.get(0, 0) >= 1:
                w.note_cap("unit-survival")
                w.make_full(ranks, "unit-survival")
                for k in ranks:
                    w.cut_upper(k, ranks[k], "unit-survival")
            total_low = sum(w.lower.values())
            for k in ranks:
                w.cut_upper(k, w.cap - (total_low - w.lower[k]), "total-residual")

    out_windows: list[WindowBounds] = []
    for w in windows:
        for k in ranks:
            if w.lower[k] > w.upper[k]:
                raise BoundsError(
                    f"window {w.start}: degree {k} lower {w.lower[k]} exceeds "
                    f"upper {w.upper[k]}"
                )
        total_lower = sum(w.lower.values())
        total_upper = min(w.cap, sum(w.upper.values()))
        if total_lower > total_upper:
            raise BoundsError(
                f"window {w.start}: total lower {total_lower} exceeds upper "
                f"{total_upper}"
            )
        out_windows.append(
            WindowBounds(
                start=w.start,
                end=w.end,
                degrees={
                    k: DegreeBound(w.lower[k], w.upper[k], tuple(w.rules[k]))
                    for k in sorted(ranks)
                },
                total_lower=total_lower,
                total_upper=total_upper,
                cap_rules=tuple(w.cap_rules),
            )
        )
    return BoundReport(manifold=m.name, up_to=up_to, windows=out_windows)
