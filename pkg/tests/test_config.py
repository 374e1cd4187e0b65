"""Tests for settings, logging setup and metrics."""

from __future__ import annotations

import json
import logging
from collections.abc import Iterator
from pathlib import Path

import pytest
from pydantic import ValidationError

from src.config import Settings
from src.logging_config import ColorFormatter, Gl2FrameJsonFormatter, setup_logging
from src.metrics import record_outcome, timed_stage, write_metrics


@pytest.fixture
def restore_root_logger() -> Iterator[None]:
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


class TestSettings:
    """Tests for Settings."""

    def test_default_values(self) -> None:
        """Test default configuration values."""
        settings = Settings(_env_file=None)
        assert settings.workers == 1
        assert settings.default_samples == 3
        assert settings.default_seed == 0
        assert settings.verify_depth == 3
        assert not settings.include_timings

    def test_environment_override(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Variables with the GL2FRAME_ prefix override defaults."""
        monkeypatch.setenv("GL2FRAME_WORKERS", "4")
        monkeypatch.setenv("GL2FRAME_DEFAULT_SAMPLES", "5")
        settings = Settings(_env_file=None)
        assert settings.workers == 4
        assert settings.default_samples == 5

    def test_bounds(self) -> None:
        with pytest.raises(ValidationError):
            Settings(_env_file=None, workers=0)
        with pytest.raises(ValidationError):
            Settings(_env_file=None, default_samples=1)
        with pytest.raises(ValidationError):
            Settings(_env_file=None, sample_zero_bias=1.5)

    @pytest.mark.parametrize(
        ("environment", "log_format", "expected"),
        [
            ("production", "auto", True),
            ("development", "auto", False),
            ("development", "json", True),
            ("production", "console", False),
        ],
    )
    def test_json_logs(self, environment: str, log_format: str, expected: bool) -> None:
        settings = Settings(_env_file=None, environment=environment, log_format=log_format)
        assert settings.json_logs is expected


class TestLogging:
    """Tests for setup_logging and the formatters."""

    def test_setup(self, restore_root_logger: None) -> None:
        root = setup_logging("debug")
        assert root.level == logging.DEBUG
        assert len(root.handlers) == 1
        assert isinstance(root.handlers[0].formatter, ColorFormatter)

    def test_json_formatter(self) -> None:
        formatter = Gl2FrameJsonFormatter(fmt="%(asctime)s %(name)s %(levelname)s %(message)s")
        record = logging.LogRecord("src.frame", logging.WARNING, __file__, 1, "broken", None, None)
        data = json.loads(formatter.format(record))
        assert data["service"] == "gl2frame"
        assert data["level"] == "warning"
        assert data["message"] == "broken"
        assert "timestamp" in data

    def test_color_formatter_keeps_record(self) -> None:
        formatter = ColorFormatter(fmt="%(levelname)s %(message)s")
        record = logging.LogRecord("src", logging.INFO, __file__, 1, "hello", None, None)
        assert formatter.format(record).endswith("INFO\033[0m hello")
        assert record.levelname == "INFO"


class TestMetrics:
    """Tests for stage timings and the metrics dump."""

    def test_timed_stage_accumulates(self) -> None:
        timings: dict[str, float] = {}
        with timed_stage("expand", timings):
            pass
        with timed_stage("expand", timings):
            pass
        assert list(timings) == ["expand"]
        assert timings["expand"] >= 0.0

    def test_timed_stage_records_on_error(self) -> None:
        timings: dict[str, float] = {}
        with pytest.raises(RuntimeError), timed_stage("frame", timings):
            raise RuntimeError("boom")
        assert "frame" in timings

    def test_write_metrics(self, tmp_path: Path) -> None:
        record_outcome("verify", "success")
        with timed_stage("normalize"):
            pass
        path = tmp_path / "metrics.prom"
        write_metrics(path)
        text = path.read_text()
        assert 'gl2frame_analyses_total{command="verify",outcome="success"}' in text
        assert 'gl2frame_stage_duration_seconds_count{stage="normalize"}' in text
