"""Shared test fixtures for the gl2frame test suite."""

from __future__ import annotations

import random
from collections.abc import Callable
from pathlib import Path

import pytest
from sympy.polys.domains import QQ

from src.fields import Chart, VField
from src.jets import Jet, JetSpace, VarKind


def _random_jet(
    rng: random.Random,
    space: JetSpace,
    order: int,
    terms: int = 6,
    height: int = 5,
    unit: bool = False,
) -> Jet:
    """A random jet; with ``unit`` its constant term is nonzero."""
    coefficients: dict[tuple[int, ...], object] = {}
    for _ in range(terms):
        exponents = [0] * space.dim
        for _ in range(rng.randint(0, order)):
            exponents[rng.randrange(space.dim)] += 1
        coefficients[tuple(exponents)] = QQ(rng.randint(-height, height), rng.randint(1, height))
    jet = Jet.from_dict(space, coefficients, order)
    if unit:
        jet = jet - jet.constant_term() + QQ(rng.randint(1, height), rng.randint(1, height))
    return jet


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator so failures reproduce."""
    return random.Random(20240611)


@pytest.fixture
def random_jet(rng: random.Random) -> Callable[..., Jet]:
    """Factory for random jets over a given space."""

    def make(space: JetSpace, order: int, **kwargs: object) -> Jet:
        return _random_jet(rng, space, order, **kwargs)  # type: ignore[arg-type]

    return make


@pytest.fixture
def random_field(rng: random.Random) -> Callable[[Chart, int], VField]:
    """Factory for random vector fields on a chart."""

    def make(chart: Chart, order: int) -> VField:
        return VField(chart, [_random_jet(rng, chart.space, order, terms=4) for _ in chart.names])

    return make


@pytest.fixture
def txy() -> JetSpace:
    """Three series variables."""
    return JetSpace.series(["t", "x", "y"])


@pytest.fixture
def laurent_space() -> JetSpace:
    """Series variables t, x and the exact variable F0."""
    return JetSpace(["t", "x", "F0"], [VarKind.SERIES, VarKind.SERIES, VarKind.LAURENT])


@pytest.fixture
def base_point3() -> dict[str, object]:
    """A base point for k = 3."""
    return {"t": QQ(0), "x0": QQ(1, 2), "x1": QQ(1, 3), "x2": QQ(1, 4), "x3": QQ(1, 5)}


@pytest.fixture
def write_problem(tmp_path: Path) -> Callable[..., Path]:
    """Write a problem file from ``key = value`` pairs."""

    def write(name: str = "problem.txt", **values: object) -> Path:
        lines = [f"{key.replace('__', '.')} = {value}" for key, value in values.items()]
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return write
