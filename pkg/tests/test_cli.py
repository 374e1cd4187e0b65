"""Tests for problem files and the gl2frame command line."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from src.cli import __version__
from src.cli.cli import cli
from src.cli.main import EXIT_INPUT, EXIT_INTERNAL, EXIT_OK
from src.cli.problem_file import load_problem, parse_problem
from src.errors import InternalConsistencyError, ProblemFileError
from src.pipeline import run_verification

PROBLEM = """\
# x'''' = x0^2
k = 3
rhs = x0^2   # the right-hand side
point.x0 = 2/4
fiber.F0 = 2
samples = 3
"""


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


class TestProblemFile:
    """Tests for parse_problem and load_problem."""

    def test_parse(self) -> None:
        """Comments are dropped and omitted fiber values take their defaults."""
        spec = parse_problem(PROBLEM, source="example.txt")
        assert spec.k == 3
        assert spec.rhs == "x0^2"
        assert spec.base_point == {"x0": "1/2"}
        assert spec.fiber_point == ("2", "0", "1")
        assert spec.samples == 3
        assert spec.order is None
        assert spec.source == "example.txt"

    def test_no_fiber_keys(self) -> None:
        spec = parse_problem("k = 4\nrhs = x1*x3\n")
        assert spec.fiber_point is None

    @pytest.mark.parametrize(
        ("text", "message"),
        [
            ("k = 3\n", "missing required key"),
            ("k = 3\nrhs = 0\ncolor = red\n", "unknown key 'color'"),
            ("k = 3\nk = 4\nrhs = 0\n", "given twice"),
            ("k = 3\nrhs =\n", "has no value"),
            ("k = 3\nrhs 0\n", "expected 'key = value'"),
            ("k = three\nrhs = 0\n", "k must be an integer"),
            ("k = 3\nrhs = 0\npoint.x0 = 0.5\n", "base_point"),
        ],
    )
    def test_malformed(self, text: str, message: str) -> None:
        with pytest.raises(ProblemFileError, match=message):
            parse_problem(text)

    def test_line_numbers(self) -> None:
        with pytest.raises(ProblemFileError, match="problem.txt:3"):
            parse_problem("k = 3\nrhs = 0\nbogus = 1\n", source="problem.txt")

    def test_load(self, write_problem) -> None:
        path = write_problem(k=3, rhs="x1", point__t="1")
        spec = load_problem(path)
        assert spec.base_point == {"t": "1"}
        assert spec.source == str(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(ProblemFileError, match="cannot read"):
            load_problem(tmp_path / "absent.txt")


class TestCommandLine:
    """Tests for exit codes and output of the click commands."""

    def test_version(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == EXIT_OK
        assert result.output.strip() == f"gl2frame v{__version__}"

    def test_help(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, [])
        assert result.exit_code == EXIT_OK
        for command in ("analyze", "verify", "compare"):
            assert command in result.output

    def test_k_two_rejected(self, runner: CliRunner, write_problem) -> None:
        """Equations of order three are outside the theory."""
        result = runner.invoke(cli, ["analyze", str(write_problem(k=2, rhs="0"))])
        assert result.exit_code == EXIT_INPUT
        assert "k must exceed 2" in result.output

    def test_syntax_error(self, runner: CliRunner, write_problem) -> None:
        result = runner.invoke(cli, ["verify", str(write_problem(k=3, rhs="x0 +"))])
        assert result.exit_code == EXIT_INPUT
        assert "position 4" in result.output

    def test_unknown_key(self, runner: CliRunner, write_problem) -> None:
        result = runner.invoke(cli, ["analyze", str(write_problem(k=3, rhs="0", colour="red"))])
        assert result.exit_code == EXIT_INPUT
        assert "unknown key" in result.output

    def test_missing_file(self, runner: CliRunner, tmp_path: Path) -> None:
        result = runner.invoke(cli, ["analyze", str(tmp_path / "absent.txt")])
        assert result.exit_code == 2

    def test_compare_order_mismatch(self, runner: CliRunner, write_problem) -> None:
        first = write_problem("a.txt", k=3, rhs="0")
        second = write_problem("b.txt", k=4, rhs="0")
        result = runner.invoke(cli, ["compare", str(first), str(second)])
        assert result.exit_code == EXIT_INPUT
        assert "different order" in result.output

    def test_internal_failure(
        self, runner: CliRunner, write_problem, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """A failed guaranteed identity maps to exit code 3."""

        def fail(spec):
            raise InternalConsistencyError("adapted frame violates T01_2", identity="T01_2")

        monkeypatch.setattr("src.cli.main.run_analysis", fail)
        result = runner.invoke(cli, ["analyze", str(write_problem(k=3, rhs="0"))])
        assert result.exit_code == EXIT_INTERNAL
        assert "internal consistency failure (T01_2)" in result.output

    def test_metrics_written_on_failure(
        self, runner: CliRunner, write_problem, tmp_path: Path
    ) -> None:
        metrics = tmp_path / "metrics.prom"
        problem = write_problem(k=2, rhs="0")
        result = runner.invoke(cli, ["analyze", str(problem), "--metrics-out", str(metrics)])
        assert result.exit_code == EXIT_INPUT
        assert "gl2frame_analyses_total" in metrics.read_text()


@pytest.mark.slow
class TestCommandLineRuns:
    """End-to-end command runs."""

    def test_analyze_trivial_equation(self, runner: CliRunner, write_problem) -> None:
        result = runner.invoke(cli, ["analyze", str(write_problem(k=3, rhs="0", samples=2))])
        assert result.exit_code == EXIT_OK
        assert result.output.startswith("# gl2frame-report/1\n")
        assert "verdict.flat = true" in result.output
        assert "flatness.status = flat" in result.output
        assert "torsion.T01_3 = 0" in result.output
        assert "constants.c1_0 = -3" in result.output
        assert "constants.c3_2 = -3" in result.output

    def test_reports_are_byte_identical(
        self, runner: CliRunner, write_problem, tmp_path: Path
    ) -> None:
        problem = write_problem(k=3, rhs="x0^2", samples=2, seed=5)
        outputs = []
        for name in ("first.txt", "second.txt"):
            out = tmp_path / name
            result = runner.invoke(cli, ["analyze", str(problem), "-o", str(out)])
            assert result.exit_code == EXIT_OK
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]
        assert b"verdict.wunschmann = false" in outputs[0]
        assert b"verdict.flat = false" in outputs[0]

    def test_json_report(self, runner: CliRunner, write_problem) -> None:
        problem = write_problem(k=3, rhs="0", samples=2)
        result = runner.invoke(cli, ["analyze", str(problem), "--format", "json"])
        data = json.loads(result.output)
        assert data["report_schema"] == "gl2frame-report/1"
        assert data["verdicts"]["flat"] == "true"

    def test_verify_passes(self, runner: CliRunner, write_problem) -> None:
        result = runner.invoke(cli, ["verify", str(write_problem(k=4, rhs="x3*x1"))])
        assert result.exit_code == EXIT_OK
        assert "result = pass" in result.output

    def test_verify_passes_seed_override(
        self, runner: CliRunner, write_problem, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        seen = []

        def capture(spec):
            seen.append(spec)
            raise ProblemFileError("stopped after capture")

        monkeypatch.setattr("src.cli.main.run_verification", capture)
        problem = str(write_problem(k=3, rhs="0", seed=4))
        result = runner.invoke(cli, ["verify", problem, "--seed", "11", "--order", "9"])
        assert result.exit_code == EXIT_INPUT
        assert (seen[0].seed, seen[0].order) == (11, 9)
        runner.invoke(cli, ["verify", problem])
        assert seen[1].seed == 4

    def test_verify_reports_corrupted_frame(
        self, runner: CliRunner, write_problem, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        def corrupt(frame):
            return frame.model_copy(update={"bx": frame.bx * 2})

        monkeypatch.setattr(
            "src.cli.main.run_verification",
            lambda spec: run_verification(spec, frame_hook=corrupt),
        )
        result = runner.invoke(cli, ["verify", str(write_problem(k=3, rhs="0"))])
        assert result.exit_code == EXIT_INTERNAL
        assert "result = fail" in result.output
        assert "first_failure = " in result.output

    def test_compare(self, runner: CliRunner, write_problem) -> None:
        first = write_problem("flat.txt", k=3, rhs="0", samples=2)
        second = write_problem("square.txt", k=3, rhs="x0^2", samples=2)
        result = runner.invoke(cli, ["compare", str(first), str(second)])
        assert result.exit_code == EXIT_OK
        assert "verdict = distinguishable" in result.output
