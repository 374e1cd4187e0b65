"""Command implementations behind the click group.

Each ``cmd_*`` returns the process exit code: 0 on success, 2 for input
errors and 3 when an identity guaranteed by the theory fails.
"""

from __future__ import annotations

import logging
from pathlib import Path

from click import echo, style

from src.cli.formatting import render_compare, render_json, render_text, render_verification
from src.cli.problem_file import load_problem
from src.errors import Gl2FrameError, InputError, InternalConsistencyError
from src.metrics import write_metrics
from src.pipeline import ProblemSpec, compare, run_analysis, run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _override(spec: ProblemSpec, **values: int | None) -> ProblemSpec:
    """Apply command-line overrides that were actually given."""
    update = {name: value for name, value in values.items() if value is not None}
    return spec.model_copy(update=update) if update else spec


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        echo(text, nl=False)
        return
    out.write_text(text, encoding="utf-8")
    logger.info("report written to %s", out)


def _fail(exc: Gl2FrameError) -> int:
    """Print an error and map it to an exit code."""
    if isinstance(exc, InputError):
        echo(style(f"error: {exc}", fg="red"), err=True)
        return EXIT_INPUT
    if isinstance(exc, InternalConsistencyError) and exc.identity:
        echo(style(f"internal consistency failure ({exc.identity}): {exc}", fg="red"), err=True)
    else:
        echo(style(f"internal consistency failure: {exc}", fg="red"), err=True)
    return EXIT_INTERNAL


def cmd_analyze(
    path: Path,
    out: Path | None = None,
    order: int | None = None,
    seed: int | None = None,
    samples: int | None = None,
    output_format: str = "text",
    metrics_out: Path | None = None,
) -> int:
    """Analyze a problem file and write the invariant report.

    Returns:
        Exit code
    """
    try:
        spec = _override(load_problem(path), order=order, seed=seed, samples=samples)
        report = run_analysis(spec)
    except Gl2FrameError as exc:
        return _fail(exc)
    finally:
        if metrics_out is not None:
            write_metrics(metrics_out)
    text = render_json(report) if output_format == "json" else render_text(report)
    _emit(text, out)
    return EXIT_OK


def cmd_verify(
    path: Path,
    order: int | None = None,
    seed: int | None = None,
    output_format: str = "text",
) -> int:
    """Run every identity suite at the primary point.

    Returns:
        Exit code (3 when any identity fails)
    """
    try:
        spec = _override(load_problem(path), order=order, seed=seed)
        report = run_verification(spec)
    except Gl2FrameError as exc:
        return _fail(exc)
    echo(render_json(report) if output_format == "json" else render_verification(report), nl=False)
    if not report.passed:
        echo(style(f"verification failed: {report.first_failure}", fg="red"), err=True)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_compare(
    first: Path,
    second: Path,
    order: int | None = None,
    seed: int | None = None,
    output_format: str = "text",
) -> int:
    """Compare the invariant verdicts of two problem files.

    Returns:
        Exit code
    """
    try:
        a = _override(load_problem(first), order=order, seed=seed)
        b = _override(load_problem(second), order=order, seed=seed)
        report = compare(a, b)
    except Gl2FrameError as exc:
        return _fail(exc)
    echo(render_json(report) if output_format == "json" else render_compare(report), nl=False)
    return EXIT_OK
