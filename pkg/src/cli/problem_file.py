"""Reading problem files.

A problem file is a flat list of ``key = value`` lines; ``#`` starts a
comment. Example::

    # x'''' = x0^2
    k = 3
    rhs = x0^2
    point.t = 0
    point.x0 = 1/2
    fiber.F0 = 2
    samples = 3
"""

from __future__ import annotations

import logging
from pathlib import Path

from pydantic import ValidationError

from src.errors import ProblemFileError
from src.pipeline import DEFAULT_FIBER, ProblemSpec

logger = logging.getLogger(__name__)

INTEGER_KEYS = ("k", "order", "samples", "seed")
FIBER_KEYS = ("fiber.F0", "fiber.F1", "fiber.G")


def parse_problem(text: str, source: str = "<string>") -> ProblemSpec:
    """Parse the text of a problem file.

    Raises:
        ProblemFileError: malformed lines, unknown or repeated keys, missing
            ``k`` or ``rhs``, or values of the wrong kind
    """
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ProblemFileError(
                f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}"
            )
        if not _known_key(key):
            raise ProblemFileError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ProblemFileError(f"{source}:{lineno}: key {key!r} given twice")
        if not value:
            raise ProblemFileError(f"{source}:{lineno}: key {key!r} has no value")
        values[key] = value

    missing = [key for key in ("k", "rhs") if key not in values]
    if missing:
        raise ProblemFileError(f"{source}: missing required key(s) {', '.join(missing)}")

    fields: dict[str, object] = {"rhs": values["rhs"], "source": source}
    for key in INTEGER_KEYS:
        if key in values:
            try:
                fields[key] = int(values[key])
            except ValueError:
                raise ProblemFileError(
                    f"{source}: {key} must be an integer, got {values[key]!r}"
                ) from None
    fields["base_point"] = {
        key.removeprefix("point."): value
        for key, value in values.items()
        if key.startswith("point.")
    }
    if any(key in values for key in FIBER_KEYS):
        fields["fiber_point"] = tuple(
            values.get(key, default) for key, default in zip(FIBER_KEYS, DEFAULT_FIBER)
        )

    try:
        spec = ProblemSpec(**fields)
    except ValidationError as exc:
        details = "; ".join(
            f"{'.'.join(str(p) for p in error['loc'])}: {error['msg']}" for error in exc.errors()
        )
        raise ProblemFileError(f"{source}: {details}") from None
    logger.debug("parsed problem %s: k=%d rhs=%s", source, spec.k, spec.rhs)
    return spec


def _known_key(key: str) -> bool:
    if key in ("rhs", *INTEGER_KEYS, *FIBER_KEYS):
        return True
    return key.startswith("point.") and len(key) > len("point.")


def load_problem(path: Path) -> ProblemSpec:
    """Read and parse a problem file.

    Raises:
        ProblemFileError: the file cannot be read or does not parse
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFileError(f"cannot read problem file {path}: {exc.strerror}") from None
    return parse_problem(text, source=str(path))
