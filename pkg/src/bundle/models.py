"""Charts on the canonical bundle and its fundamental fields."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from src.fields import Chart, VField
from src.normalize import ReferenceFrame

FIBER_NAMES = ("F0", "F1", "G")


class FundamentalFields(BaseModel):
    """``BG = G d/dG``, ``BF0 = F0 d/dF0`` and ``BF1 = F0 d/dF1``."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    bg: VField
    bf0: VField
    bf1: VField

    def as_list(self) -> list[VField]:
        return [self.bg, self.bf0, self.bf1]


class BundleChart(BaseModel):
    """Chart ``(t, x0..xk, F0, F1, G)`` at a bundle point.

    ``x`` and ``v`` are the reference fields lifted with components
    constant in the fiber variables. F0 and G are exact Laurent variables,
    F1 is a series displacement around its value at the point.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    chart: Chart
    k: int
    reference: ReferenceFrame
    x: VField
    v: VField
    fundamentals: FundamentalFields
    order: int = Field(description="Validity order of the lifted reference fields")

    @property
    def dimension(self) -> int:
        return self.chart.dim

    @property
    def fiber_point(self) -> tuple[Any, Any, Any]:
        return tuple(self.chart.value(name) for name in FIBER_NAMES)  # type: ignore[return-value]

    @property
    def base_dim(self) -> int:
        return self.k + 2
