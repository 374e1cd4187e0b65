"""Expansion points: the primary base point and seeded flatness samples."""

from __future__ import annotations

import logging
import random

from sympy.polys.domains import QQ

from src.config import settings
from src.errors import ExpansionDomainError
from src.expr import Expr, expand_to_jet
from src.jets import Rational, format_rational, to_rational
from src.pipeline.models import ProblemSpec
from src.retry import retry_on_domain_error

logger = logging.getLogger(__name__)

Point = dict[str, Rational]


def default_base_point(k: int) -> Point:
    """``t = 0`` and ``x_i = 1/(i+2)``."""
    point: Point = {"t": QQ(0)}
    for i in range(k + 1):
        point[f"x{i}"] = QQ(1, i + 2)
    return point


def check_admissible(ast: Expr, point: Point) -> None:
    """Raise ``ExpansionDomainError`` unless F expands exactly at ``point``."""
    expand_to_jet(ast, point, 1)


def draw_point(
    rng: random.Random, k: int, height: int | None = None, zero_bias: float | None = None
) -> Point:
    """A random point with small rational coordinates, some exactly zero."""
    height = height or settings.sample_height
    zero_bias = settings.sample_zero_bias if zero_bias is None else zero_bias
    point: Point = {}
    for name in ["t", *(f"x{i}" for i in range(k + 1))]:
        if rng.random() < zero_bias:
            point[name] = QQ(0)
        else:
            point[name] = QQ(rng.randint(-height, height), rng.randint(1, height))
    return point


def draw_admissible(ast: Expr, k: int, rng: random.Random) -> Point:
    """Draw until F expands exactly, up to ``settings.sample_attempts`` times.

    Raises:
        ExpansionDomainError: no admissible point was found
    """

    @retry_on_domain_error()
    def attempt() -> Point:
        point = draw_point(rng, k)
        check_admissible(ast, point)
        return point

    return attempt()


def primary_point(spec: ProblemSpec, ast: Expr, rng: random.Random) -> Point:
    """The point the report is computed at.

    Given coordinates are used as is, missing ones take their default. When
    no coordinate is given and F cannot be expanded at the default point,
    the first admissible seeded sample is used instead.

    Raises:
        ExpansionDomainError: F does not expand at the given point
    """
    point = default_base_point(spec.k)
    point.update({name: to_rational(v) for name, v in spec.base_point.items()})
    try:
        check_admissible(ast, point)
    except ExpansionDomainError:
        if spec.base_point:
            raise
        logger.info("rhs not expandable at the default point; drawing a seeded point")
        point = draw_admissible(ast, spec.k, rng)
    return point


def sample_points(ast: Expr, k: int, count: int, rng: random.Random) -> list[Point]:
    """``count`` seeded admissible points."""
    points = [draw_admissible(ast, k, rng) for _ in range(count)]
    logger.debug("sample points: %s", [format_point(p) for p in points])
    return points


def format_point(point: Point) -> dict[str, str]:
    return {name: format_rational(value) for name, value in point.items()}
