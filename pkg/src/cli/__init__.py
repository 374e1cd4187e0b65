"""Command-line interface: ``gl2frame analyze | verify | compare``."""

from __future__ import annotations

__version__ = "0.1.0"
