"""Prometheus metrics for analysis runs.

Stage durations and analysis outcomes go to a private registry; the CLI can
dump it with ``--metrics-out``.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

from prometheus_client import CollectorRegistry, Counter, Histogram, generate_latest

logger = logging.getLogger(__name__)

# ── Registry ──

registry = CollectorRegistry()


# ── Pipeline Metrics ──

stage_duration_seconds = Histogram(
    "gl2frame_stage_duration_seconds",
    "Duration of a pipeline stage at one expansion point",
    ["stage"],
    buckets=(0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 15.0, 60.0, 300.0, 1200.0),
    registry=registry,
)

analyses_total = Counter(
    "gl2frame_analyses_total",
    "Analyses run, by command and outcome",
    ["command", "outcome"],
    registry=registry,
)


# ── Helpers ──


@contextmanager
def timed_stage(stage: str, timings: dict[str, float] | None = None) -> Iterator[None]:
    """Time a pipeline stage.

    Args:
        stage: Stage label (``expand``, ``normalize``, ``bundle``, ...)
        timings: Optional dict accumulating seconds per stage
    """
    start = time.perf_counter()
    try:
        yield
    finally:
        elapsed = time.perf_counter() - start
        stage_duration_seconds.labels(stage=stage).observe(elapsed)
        if timings is not None:
            timings[stage] = timings.get(stage, 0.0) + elapsed
        logger.info("stage %s finished in %.3fs", stage, elapsed)


def record_outcome(command: str, outcome: str) -> None:
    analyses_total.labels(command=command, outcome=outcome).inc()


def write_metrics(path: Path) -> None:
    """Write the registry in Prometheus text exposition format."""
    path.write_bytes(generate_latest(registry))
