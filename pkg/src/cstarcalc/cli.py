"""Command line front end.

Every subcommand reads one input (a built-in fixture or a JSON file),
prints a deterministic table or diagnostic listing, and exits 0 on
success, 1 when a validity check fails, and 2 on usage or parse
errors.  The report subcommand writes the full set of tables for an
input into a directory, together with rendered figures.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import click

from cstarcalc.bounds import (
    BoundsError,
    bound_report,
    delta_polyline,
)
from cstarcalc.findings import Finding, all_ok
from cstarcalc.fixtures import (
    ALGEBRA_NAMES,
    MANIFOLD_NAMES,
    builtin_algebra,
    builtin_fixture,
)
from cstarcalc.graph import to_dot, validate_graph
from cstarcalc.indices import (
    cohomology_ranks,
    critical_times,
    index_at,
    index_table,
    outer_periods,
)
from cstarcalc.manifold import ManifoldData, ManifoldError, parse_manifold, validate
from cstarcalc.numerics import Side, Slope
from cstarcalc.qalg import (
    AlgebraError,
    GradedAlgebra,
    cup_ideal_check,
    generalized_zero_eigenspace,
    ini_specialize,
    kernel_power,
    parse_algebra,
    sh_rank,
    stabilization_index,
    validate_algebra,
)
from cstarcalc.ssapprox import approximate_e1


def _read_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"{path} is not valid JSON: {exc}")


def _load_manifold(fixture: str | None, input_path: str | None) -> ManifoldData:
    if (fixture is None) == (input_path is None):
        raise click.UsageError("provide exactly one of --fixture or --input")
    try:
        if fixture is not None:
            return builtin_fixture(fixture)
        return parse_manifold(_read_json(input_path))
    except KeyError:
        raise click.UsageError(
            f"unknown fixture {fixture!r}; choices: {', '.join(MANIFOLD_NAMES)}"
        )
    except ManifoldError as exc:
        raise click.UsageError(str(exc))


def _load_algebra(fixture: str | None, input_path: str | None) -> GradedAlgebra:
    if (fixture is None) == (input_path is None):
        raise click.UsageError("provide exactly one of --fixture or --input")
    try:
        if fixture is not None:
            return builtin_algebra(fixture)
        return parse_algebra(_read_json(input_path))
    except KeyError:
        raise click.UsageError(
            f"unknown fixture {fixture!r}; choices: {', '.join(ALGEBRA_NAMES)}"
        )
    except AlgebraError as exc:
        raise click.UsageError(str(exc))


def _parse_fraction(text: str, what: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"{what} must be a rational number, got {text!r}")
    if value < 0:
        raise click.UsageError(f"{what} must be nonnegative")
    return value


def _parse_slopes(text: str) -> list[Slope]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            out.append(Slope.parse(part))
        except ValueError as exc:
            raise click.UsageError(str(exc))
    if not out:
        raise click.UsageError("no slopes given")
    return out


def _echo_findings(findings: list[Finding]) -> None:
    for f in findings:
        click.echo(str(f))


def _manifold_options(fn):
    fn = click.option(
        "--input",
        "input_path",
        default=None,
        help="Path to a manifold JSON file.",
    )(fn)
    fn = click.option(
        "--fixture",
        default=None,
        help=f"Built-in manifold ({', '.join(MANIFOLD_NAMES)}).",
    )(fn)
    return fn


def _format_option(fn):
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(["md", "csv"]),
        default="md",
        show_default=True,
        help="Output format.",
    )(fn)


@click.group()
@click.version_option()
def main() -> None:
    """Calculator for combinatorial invariants of C*-manifolds."""


@main.command(name="validate")
@_manifold_options
def validate_cmd(fixture, input_path):
    """Check manifold data against the structural rules."""
    m = _load_manifold(fixture, input_path)
    findings = validate(m)
    _echo_findings(findings)
    if not all_ok(findings):
        raise SystemExit(1)


@main.command()
@_manifold_options
@_format_option
@click.option(
    "--slopes",
    required=True,
    help="Comma-separated slopes, e.g. '0+,1/5+,1/3'.",
)
def indices(fixture, input_path, fmt, slopes):
    """Index table over the components at the given slopes."""
    m = _load_manifold(fixture, input_path)
    table = index_table(m, _parse_slopes(slopes))
    click.echo(table.to_markdown() if fmt == "md" else table.to_csv(), nl=False)


@main.command()
@_manifold_options
@_format_option
@click.option("--up-to", "up_to", default="1", show_default=True)
def bounds(fixture, input_path, fmt, up_to):
    """Window-by-window rank bounds for the invariant subspace."""
    m = _load_manifold(fixture, input_path)
    try:
        report = bound_report(m, _parse_fraction(up_to, "--up-to"))
    except BoundsError as exc:
        click.echo(f"inconsistent bounds: {exc}", err=True)
        raise SystemExit(1)
    text = report.to_markdown() if fmt == "md" else report.to_csv()
    click.echo(text, nl=False)


@main.command()
@_manifold_options
@_format_option
@click.option("--up-to", "up_to", default="1", show_default=True)
def e1page(fixture, input_path, fmt, up_to):
    """Approximate first page of the slope spectral sequence."""
    m = _load_manifold(fixture, input_path)
    page = approximate_e1(m, _parse_fraction(up_to, "--up-to"))
    click.echo(page.to_markdown() if fmt == "md" else page.to_csv(), nl=False)


@main.command()
@_manifold_options
@click.option("--dot", is_flag=True, help="Emit the diagram in DOT format.")
def graph(fixture, input_path, dot):
    """Check the attraction diagram, or render it with --dot."""
    m = _load_manifold(fixture, input_path)
    if dot:
        click.echo(to_dot(m), nl=False)
        return
    findings = validate_graph(m)
    _echo_findings(findings)
    if not all_ok(findings):
        raise SystemExit(1)


def _combo(names: list[str], coeffs) -> str:
    parts = []
    for name, c in zip(names, coeffs):
        if not c:
            continue
        parts.append(f"({c})*{name}")
    return " + ".join(parts) if parts else "0"


def _quantum_lines(a: GradedAlgebra, cls: str, op: str, initial: bool) -> list[str]:
    names = a.basis_names()
    if op == "chain":
        idx = stabilization_index(a, cls)
        lines = [f"{n},{kernel_power(a, cls, n).dim}" for n in range(idx + 1)]
        lines.append(f"inf,{a.dim}")
        return lines
    if op == "kernels":
        space = kernel_power(a, cls, 1)
        lines = [f"dim {space.dim}"]
        lines += [_combo(names, row) for row in space.cleared_rows()]
        return lines
    if op == "e0":
        space = generalized_zero_eigenspace(a, cls)
        lines = [
            f"dim {space.dim}",
            f"sh-rank {sh_rank(a, cls)}",
        ]
        lines += [_combo(names, row) for row in space.cleared_rows()]
        return lines
    if op == "ini":
        space = generalized_zero_eigenspace(a, cls)
        rows = ini_specialize(a, space)
        return [_combo(names, row) for row in rows]
    space = kernel_power(a, cls, 1)
    return [str(f) for f in cup_ideal_check(a, space, use_initial=initial)]


@main.command()
@click.option(
    "--fixture",
    default=None,
    help=f"Built-in algebra ({', '.join(ALGEBRA_NAMES)}).",
)
@click.option("--input", "input_path", default=None, help="Algebra JSON file.")
@click.option("--class", "cls", required=True, help="Named class to multiply by.")
@click.option(
    "--op",
    type=click.Choice(["kernels", "e0", "chain", "ini", "cupcheck"]),
    required=True,
)
@click.option(
    "--initial",
    is_flag=True,
    help="For cupcheck: test the specialized span instead of the raw one.",
)
def quantum(fixture, input_path, cls, op, initial):
    """Kernel towers and ideal checks in the quantum algebra.

    The chain rows list the kernel dimension at each power up to
    stabilization; the final inf row shows the ambient rank for
    reference.  cupcheck reports structural findings without failing
    the exit code, since a negative answer is a result, not an error.
    """
    a = _load_algebra(fixture, input_path)
    checks = validate_algebra(a)
    if not all_ok(checks):
        _echo_findings(checks)
        raise SystemExit(1)
    if cls not in a.classes:
        raise click.UsageError(
            f"unknown class {cls!r}; choices: {', '.join(sorted(a.classes))}"
        )
    try:
        lines = _quantum_lines(a, cls, op, initial)
    except AlgebraError as exc:
        click.echo(str(exc), err=True)
        raise SystemExit(1)
    for line in lines:
        click.echo(line)


def _figure_paths(m: ManifoldData, up_to: Fraction, out: Path) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    crits = [t for t, _ in critical_times(m, up_to)]
    stops = sorted({Fraction(0), up_to, *crits})

    fig, ax = plt.subplots(figsize=(8, 5))
    for c in m.components:
        xs, ys = [], []
        for x in stops:
            xs.append(float(x))
            ys.append(index_at(c, Slope(x, Side.ABOVE)))
        ax.step(xs, ys, where="post", label=c.name)
    ax.set_xlabel("slope")
    ax.set_ylabel("index")
    ax.set_title(f"{m.name}: component indices")
    ax.legend(fontsize=7)
    indices_path = out / "fig_indices.png"
    fig.savefig(indices_path, dpi=110)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(8, 5))
    for k in sorted(cohomology_ranks(m)):
        pts = delta_polyline(m, k, up_to)
        ax.plot(
            [float(x) for x, _ in pts],
            [y for _, y in pts],
            marker="o",
            label=f"degree {k}",
        )
    ax.set_xlabel("slope")
    ax.set_ylabel("rank deficit")
    ax.set_title(f"{m.name}: deficits above each critical time")
    ax.legend(fontsize=8)
    delta_path = out / "fig_delta.png"
    fig.savefig(delta_path, dpi=110)
    plt.close(fig)
    return [indices_path, delta_path]


def _algebra_summary(a: GradedAlgebra) -> str:
    lines = [f"# Quantum summary: {a.name}", ""]
    lines.append(f"- rank: {a.dim}")
    lines.append(f"- parameter degree: {a.t_degree}")
    if a.presentation:
        lines.append(f"- presentation: {a.presentation}")
    names = a.basis_names()
    for cls in sorted(a.classes):
        lines.append("")
        lines.append(f"## Class {cls}")
        lines.append("")
        idx = stabilization_index(a, cls)
        chain = [kernel_power(a, cls, n).dim for n in range(idx + 1)]
        lines.append(f"- kernel chain: {', '.join(str(d) for d in chain)}")
        lines.append(f"- stabilizes at power {idx}")
        lines.append(f"- sh-rank {sh_rank(a, cls)}")
        space = generalized_zero_eigenspace(a, cls)
        for row in space.cleared_rows():
            lines.append(f"- eigenspace: {_combo(names, row)}")
        first = kernel_power(a, cls, 1)
        for f in cup_ideal_check(a, first, use_initial=False):
            lines.append(f"- {f}")
        for f in cup_ideal_check(a, first, use_initial=True)[1:]:
            lines.append(f"- {f}")
    lines.append("")
    return "\n".join(lines)


@main.command()
@click.option("--fixture", default=None, help="Built-in manifold fixture.")
@click.option("--input", "input_path", default=None, help="Manifold JSON file.")
@click.option("--algebra", default=None, help="Built-in algebra fixture.")
@click.option(
    "--algebra-input", "algebra_path", default=None, help="Algebra JSON file."
)
@click.option("--out", "out_dir", required=True, help="Output directory.")
@click.option("--up-to", "up_to", default="1", show_default=True)
@_format_option
def report(fixture, input_path, algebra, algebra_path, out_dir, up_to, fmt):
    """Write the full set of tables and figures for an input."""
    wants_manifold = fixture is not None or input_path is not None
    wants_algebra = algebra is not None or algebra_path is not None
    if not wants_manifold and not wants_algebra:
        raise click.UsageError("nothing to report: give a manifold or an algebra")

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    failed = False
    ext = fmt
    bound = _parse_fraction(up_to, "--up-to")

    if wants_manifold:
        m = _load_manifold(fixture, input_path)
        findings = validate(m) + validate_graph(m)
        failed = not all_ok(findings)
        path = out / "findings.txt"
        path.write_text("\n".join(str(f) for f in findings) + "\n")
        written.append(path)

        slopes = [Slope(Fraction(0), Side.ABOVE)] + [
            Slope(p, Side.ABOVE) for p in outer_periods(m, bound)
        ]
        table = index_table(m, slopes)
        path = out / f"indices.{ext}"
        path.write_text(table.to_markdown() if fmt == "md" else table.to_csv())
        written.append(path)

        try:
            rep = bound_report(m, bound)
            bounds_text = rep.to_markdown() if fmt == "md" else rep.to_csv()
        except BoundsError as exc:
            bounds_text = f"inconsistent bounds: {exc}\n"
            failed = True
        path = out / f"bounds.{ext}"
        path.write_text(bounds_text)
        written.append(path)

        page = approximate_e1(m, bound)
        path = out / f"e1page.{ext}"
        path.write_text(page.to_markdown() if fmt == "md" else page.to_csv())
        written.append(path)

        path = out / "graph.dot"
        path.write_text(to_dot(m))
        written.append(path)

        written += _figure_paths(m, bound, out)

    if wants_algebra:
        a = _load_algebra(algebra, algebra_path)
        checks = validate_algebra(a)
        if not all_ok(checks):
            failed = True
            path = out / "algebra_findings.txt"
            path.write_text("\n".join(str(f) for f in checks) + "\n")
            written.append(path)
        else:
            path = out / "quantum_summary.md"
            path.write_text(_algebra_summary(a))
            written.append(path)

    for path in written:
        click.echo(str(path))
    if failed:
        raise SystemExit(1)
