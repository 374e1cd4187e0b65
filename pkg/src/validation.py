"""Validation of problem specifications.

Checks every rule and reports all failures together, so a problem file
with several mistakes is fixed in one pass.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from src.errors import ExpressionSyntaxError, ProblemFileError
from src.expr import parse
from src.jets import to_rational

if TYPE_CHECKING:
    from src.pipeline.models import ProblemSpec

logger = logging.getLogger(__name__)


# ── Validation Rules ──

VALIDATION_RULES = [
    "k_exceeds_two",
    "rhs_parses",
    "point_variables_known",
    "fiber_in_orbit",
    "order_positive",
    "samples_at_least_two",
]


# ── Validation Functions ──


def validate_problem(spec: ProblemSpec) -> list[str]:
    """Validate a problem specification.

    Returns:
        List of error messages (empty if valid)
    """
    errors = []
    for rule in VALIDATION_RULES:
        error = _run_validation(rule, spec)
        if error:
            errors.append(error)
        if rule == "k_exceeds_two" and error:
            # later rules depend on k
            break
    return errors


def _run_validation(rule: str, spec: ProblemSpec) -> str | None:
    """Run a single validation rule.

    Returns:
        Error message if validation fails, None otherwise
    """
    if rule == "k_exceeds_two":
        if spec.k <= 2:
            return f"k must exceed 2 (got k = {spec.k}); equations of order at least 4 only"

    elif rule == "rhs_parses":
        try:
            parse(spec.rhs, spec.k)
        except ExpressionSyntaxError as exc:
            return f"rhs: {exc}"

    elif rule == "point_variables_known":
        unknown = sorted(set(spec.base_point) - set(spec.variables))
        if unknown:
            return f"point assigns unknown variables: {', '.join(unknown)}"

    elif rule == "fiber_in_orbit":
        f0, _, g = spec.resolved_fiber()
        if not to_rational(f0):
            return "point outside the structure group orbit: F0 must be nonzero"
        if not to_rational(g):
            return "point outside the structure group orbit: G must be nonzero"

    elif rule == "order_positive":
        if spec.order is not None and spec.order < spec.k + 2:
            return f"order {spec.order} is below the minimum k + 2 = {spec.k + 2}"

    elif rule == "samples_at_least_two":
        if spec.samples is not None and spec.samples < 2:
            return f"flatness needs at least 2 sample points (got {spec.samples})"

    return None


def validate_or_raise(spec: ProblemSpec) -> None:
    """Raise ``ProblemFileError`` listing every failed rule."""
    errors = validate_problem(spec)
    if errors:
        for error in errors:
            logger.debug("problem validation failed: %s", error)
        raise ProblemFileError("; ".join(errors))
