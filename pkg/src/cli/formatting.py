"""Rendering of reports as text and JSON.

Text reports start with a header, then a ``[machine]`` section with one
``name = value`` line per invariant (exact rationals or verdicts, sorted
within each group), then a human summary table. Nothing in a report depends
on the clock unless timings are enabled, so reruns are byte-identical.
"""

from __future__ import annotations

import json
from io import StringIO

from rich.console import Console
from rich.table import Table

from src.frame import ResidualReport
from src.pipeline import CompareReport, InvariantReport, VerificationReport

SUMMARY_WIDTH = 100


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _ranks(values: list[int]) -> str:
    return ",".join(str(v) for v in values)


def _group(prefix: str, items: dict[str, str]) -> list[str]:
    return [f"{prefix}.{name} = {items[name]}" for name in sorted(items)]


def _suite(prefix: str, report: ResidualReport) -> list[str]:
    lines = [f"{prefix}.holds = {_flag(report.holds)}"]
    failed = report.first_failure()
    if failed:
        lines.append(f"{prefix}.first_failure = {failed}")
    return lines


# ── Analysis reports ──


def problem_lines(report: InvariantReport) -> list[str]:
    problem = report.problem
    lines = [f"k = {problem.k}", f"rhs = {problem.rhs}", f"seed = {report.seed}"]
    lines.append(f"order = {report.order}")
    primary = report.primary
    lines += _group("point", primary.base_point)
    fiber = dict(zip(("F0", "F1", "G"), primary.fiber_point, strict=True))
    lines += [f"fiber.{name} = {value}" for name, value in fiber.items()]
    return lines


def machine_lines(report: InvariantReport) -> list[str]:
    """The ``[machine]`` section of an analysis report."""
    primary = report.primary
    lines = _group("verdict", report.verdicts)

    flatness = report.flatness
    lines.append(f"flatness.points = {len(flatness.points)}")
    lines.append(f"flatness.qualifier = {flatness.qualifier}")
    lines.append(f"flatness.status = {flatness.status.value}")
    if flatness.witness:
        lines.append(f"flatness.witness = {flatness.witness}")

    lines.append(f"regularity.ranks = {_ranks(primary.regularity.ranks)}")
    lines += [
        f"wunschmann.a{i} = {value}" for i, value in enumerate(primary.wunschmann.constant_terms)
    ]

    normalization = primary.normalization
    unknowns = {
        "alpha": normalization.alpha,
        "beta": normalization.beta,
        "gamma0": normalization.gamma0,
        "gamma1": normalization.gamma1,
    }
    if normalization.c_tilde is not None:
        unknowns["c_tilde"] = normalization.c_tilde
    lines += _group("normalization", unknowns)
    lines += _group("adapted", normalization.adapted)
    lines += _group("constants", normalization.c_ij)

    lines += _group("torsion", primary.torsion)
    lines += [f"w.w{i} = {value}" for i, value in enumerate(primary.w)]

    lines += _suite("structural", primary.structural)
    lines += _suite("bf1_exact", primary.bf1_exact)
    lines += _suite("model", primary.model)
    lines += _suite("obstruction", primary.obstruction)

    equation_type = primary.equation_type
    lines.append(f"equation_type.checked = {equation_type.checked}")
    lines.append(f"equation_type.full_jet_vanishing = {_flag(equation_type.full_jet_vanishing)}")
    lines.append(f"homogeneity.holds = {_flag(primary.homogeneity.holds)}")
    lines.append(f"derived_flag.holds = {_flag(primary.derived_flag.holds)}")
    lines.append(f"derived_flag.ranks = {_ranks(primary.derived_flag.ranks)}")

    if primary.torsion_jets:
        lines += _group("jet", primary.torsion_jets)
    if report.timings:
        lines += _group("timing", {k: f"{v:.3f}" for k, v in report.timings.items()})
    return lines


def summary_table(report: InvariantReport) -> Table:
    primary = report.primary
    table = Table(title="Invariant verdicts", show_lines=False)
    table.add_column("verdict")
    table.add_column("value")
    table.add_column("evidence")
    wunschmann = ", ".join(primary.wunschmann.constant_terms) or "-"
    nonzero = ", ".join(primary.equation_type.nonzero) or "all tested entries vanish"
    table.add_row("regular", report.verdicts["regular"], _ranks(primary.regularity.ranks))
    table.add_row("wunschmann", report.verdicts["wunschmann"], f"a0..a(k-2) = {wunschmann}")
    table.add_row("equation_type", report.verdicts["equation_type"], nonzero)
    flatness = report.flatness
    table.add_row("flat", report.verdicts["flat"], flatness.witness or flatness.qualifier)
    return table


def _render(renderable: Table) -> str:
    buffer = StringIO()
    console = Console(file=buffer, width=SUMMARY_WIDTH, color_system=None, force_terminal=False)
    console.print(renderable)
    return buffer.getvalue()


def render_text(report: InvariantReport) -> str:
    """Text report: header, problem echo, machine section, summary."""
    parts = [f"# {report.report_schema}", "[problem]", *problem_lines(report)]
    parts += ["", "[machine]", *machine_lines(report), "", "[summary]"]
    return "\n".join(parts) + "\n" + _render(summary_table(report))


def render_json(report: InvariantReport | VerificationReport | CompareReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


# ── Verification and comparison ──


def render_verification(report: VerificationReport) -> str:
    """One line per suite, then the uniqueness probe and the outcome."""
    problem = report.problem
    lines = [f"# verify k = {problem.k}, rhs = {problem.rhs}, order = {report.order}"]
    for suite in report.suites:
        status = "pass" if suite.holds else "FAIL"
        lines.append(f"{suite.name}: {status} ({len(suite.residuals)} identities)")
        lines += [f"  {r.identity}: {r.witness}" for r in suite.failures()]
    if report.uniqueness is not None:
        status = "pass" if report.uniqueness.all_break else "FAIL"
        lines.append(f"uniqueness: {status} (delta = {report.uniqueness.delta})")
        for name in sorted(report.uniqueness.broken):
            broken = report.uniqueness.broken[name]
            lines.append(f"  {name}: breaks {', '.join(broken) or 'nothing'}")
    lines.append(f"result = {'pass' if report.passed else 'fail'}")
    if not report.passed:
        lines.append(f"first_failure = {report.first_failure}")
    return "\n".join(lines) + "\n"


def render_compare(report: CompareReport) -> str:
    """Verdicts and torsion fingerprints side by side."""
    first, second = report.first, report.second
    table = Table(title="Comparison")
    table.add_column("invariant")
    table.add_column(first.problem.source or "A")
    table.add_column(second.problem.source or "B")
    for name in sorted(first.verdicts):
        table.add_row(f"verdict.{name}", first.verdicts[name], second.verdicts[name])
    for name in sorted(first.primary.torsion):
        table.add_row(
            f"torsion.{name}", first.primary.torsion[name], second.primary.torsion.get(name, "-")
        )
    lines = [f"differing = {', '.join(report.differing) or 'none'}", f"verdict = {report.verdict}"]
    return _render(table) + "\n".join(lines) + "\n"
