"""Command-line interface for gl2frame.

This module provides the 'gl2frame' command:

    gl2frame analyze problem.txt -o report.txt
    gl2frame verify problem.txt
    gl2frame compare a.txt b.txt
"""

from __future__ import annotations

import sys
from pathlib import Path

import click
from click import echo

from src.cli.main import cmd_analyze, cmd_compare, cmd_verify
from src.logging_config import setup_logging

PROBLEM_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)
FORMATS = click.Choice(["text", "json"])


@click.group(invoke_without_command=True)
@click.option("--version", is_flag=True, help="Show version and exit")
@click.pass_context
def cli(ctx: click.Context, version: bool) -> None:
    """Canonical frames and contact invariants of ODEs x^(k+1) = F.

    Works with exact rational jets at chosen expansion points.
    """
    if version:
        from src.cli import __version__

        echo(f"gl2frame v{__version__}")
        return
    if ctx.invoked_subcommand is None:
        echo(ctx.get_help())


@cli.command()
@click.argument("problem", type=PROBLEM_FILE)
@click.option("--out", "-o", type=click.Path(dir_okay=False, path_type=Path), help="Report file")
@click.option("--order", type=click.IntRange(min=1), help="Jet order budget")
@click.option("--seed", type=int, help="Seed for sample points")
@click.option("--samples", type=click.IntRange(min=2), help="Flatness sample points")
@click.option("--format", "output_format", type=FORMATS, default="text", show_default=True)
@click.option(
    "--metrics-out",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write Prometheus metrics to this file",
)
def analyze(
    problem: Path,
    out: Path | None,
    order: int | None,
    seed: int | None,
    samples: int | None,
    output_format: str,
    metrics_out: Path | None,
) -> None:
    """Analyze PROBLEM and write its invariant report."""
    sys.exit(
        cmd_analyze(
            problem,
            out=out,
            order=order,
            seed=seed,
            samples=samples,
            output_format=output_format,
            metrics_out=metrics_out,
        )
    )


@cli.command()
@click.argument("problem", type=PROBLEM_FILE)
@click.option("--order", type=click.IntRange(min=1), help="Jet order budget")
@click.option("--seed", type=int, help="Seed for a drawn primary point")
@click.option("--format", "output_format", type=FORMATS, default="text", show_default=True)
def verify(problem: Path, order: int | None, seed: int | None, output_format: str) -> None:
    """Check every structural identity for PROBLEM; exit 3 on any failure."""
    sys.exit(cmd_verify(problem, order=order, seed=seed, output_format=output_format))


@cli.command(name="compare")
@click.argument("first", type=PROBLEM_FILE)
@click.argument("second", type=PROBLEM_FILE)
@click.option("--order", type=click.IntRange(min=1), help="Jet order budget")
@click.option("--seed", type=int, help="Seed for sample points")
@click.option("--format", "output_format", type=FORMATS, default="text", show_default=True)
def compare_command(
    first: Path, second: Path, order: int | None, seed: int | None, output_format: str
) -> None:
    """Compare FIRST and SECOND; only differences are conclusive."""
    sys.exit(cmd_compare(first, second, order=order, seed=seed, output_format=output_format))


def main() -> None:
    """Entry point for the CLI."""
    setup_logging()
    cli()


if __name__ == "__main__":
    main()
