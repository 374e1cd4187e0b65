"""Structured logging configuration for gl2frame.

JSON logs (python-json-logger) in production, colored console lines in
development. Logs always go to stderr; stdout carries reports.
"""

from __future__ import annotations

import logging
import sys
from datetime import datetime, timezone

from pythonjsonlogger import jsonlogger

from src.config import settings

# ── Custom JSON Formatter ──


class Gl2FrameJsonFormatter(jsonlogger.JsonFormatter):
    """JSON formatter adding service and environment fields."""

    def add_fields(self, log_record: dict, record: logging.LogRecord, message_dict: dict) -> None:
        super().add_fields(log_record, record, message_dict)

        log_record["environment"] = settings.environment
        log_record["service"] = "gl2frame"

        if "timestamp" not in log_record:
            log_record["timestamp"] = datetime.now(timezone.utc).isoformat()

        log_record["level"] = record.levelname.lower()

        log_record.pop("asctime", None)
        log_record.pop("msecs", None)
        log_record.pop("relativeCreated", None)


# ── Console Formatter for Development ──


class ColorFormatter(logging.Formatter):
    """Colored console formatter for development."""

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def format(self, record: logging.LogRecord) -> str:
        levelcolor = self.COLORS.get(record.levelname, "")
        record = logging.makeLogRecord(record.__dict__)
        record.levelname = f"{levelcolor}{record.levelname}{self.RESET}"
        return super().format(record)


# ── Setup Logging ──


def setup_logging(level: str | None = None) -> logging.Logger:
    """Configure logging for the command-line entry point.

    Args:
        level: Override for ``settings.log_level``

    Returns:
        The root logger
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, (level or settings.log_level).upper(), logging.INFO))

    root_logger.handlers.clear()

    handler = logging.StreamHandler(sys.stderr)
    if settings.json_logs:
        handler.setFormatter(Gl2FrameJsonFormatter(
            fmt="%(asctime)s %(name)s %(levelname)s %(message)s",
            timestamp=True,
        ))
    else:
        handler.setFormatter(ColorFormatter(
            fmt="%(asctime)s | %(name)-28s | %(levelname)-8s | %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        ))
    root_logger.addHandler(handler)

    return root_logger
