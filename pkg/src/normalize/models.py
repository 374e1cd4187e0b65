"""Data models for the normalization of the reference pair."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.fields import Chart, VField
from src.jets import Jet, to_rational


class AdExpansion(BaseModel):
    """Coefficients of ``ad_X^{k+1} V = sum_i a_i ad_X^i V + a_X X``."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    k: int
    a: list[Jet] = Field(description="a_0 .. a_k")
    a_x: Jet
    powers: list[VField] = Field(description="V, ad_X V, ..., ad_X^{k+1} V")

    @property
    def order(self) -> int:
        return min(j.order for j in [*self.a, self.a_x])


class NormalizationGauge(BaseModel):
    """Free data of the normalization.

    The values fix ``g(p)``, ``f(p)`` and ``(X_F f)(p)``; the transverse jets
    are added to the t-free part of the corresponding solutions and must have
    zero constant term.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    g_value: Any = 1
    f_value: Any = 1
    df_value: Any = 0
    g_transverse: Jet | None = None
    f_transverse: Jet | None = None
    df_transverse: Jet | None = None
    g2_transverse: Jet | None = None

    @field_validator("g_value", "f_value", "df_value", mode="before")
    @classmethod
    def _exact(cls, value: Any) -> Any:
        try:
            return to_rational(value)
        except TypeError as exc:
            raise ValueError(str(exc)) from exc

    @field_validator("g_value", "f_value")
    @classmethod
    def _nonzero(cls, value: Any) -> Any:
        if not value:
            raise ValueError("rescalings must be nonzero at the expansion point")
        return value

    @property
    def is_canonical(self) -> bool:
        return (
            self.g_value == 1
            and self.f_value == 1
            and self.df_value == 0
            and all(
                j is None or j.is_zero()
                for j in (
                    self.g_transverse,
                    self.f_transverse,
                    self.df_transverse,
                    self.g2_transverse,
                )
            )
        )


class ReferenceFrame(BaseModel):
    """A projective ``X = f X_F`` with a normal ``V = g d/dx_k``.

    ``expansion`` is the expansion of ``ad_X^{k+1} V`` for the normalized pair, recomputed
    at the verification depth; its ``a_k`` and ``a_{k-1}`` vanish.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    chart: Chart
    k: int
    x: VField
    v: VField
    f: Jet
    g: Jet
    expansion: AdExpansion

    @property
    def residuals(self) -> list[Jet]:
        """a_0 .. a_{k-2} of the normalized pair."""
        return list(self.expansion.a[: self.k - 1])

    @property
    def order(self) -> int:
        return min(self.x.order, self.v.order)


class WunschmannResult(BaseModel):
    """Wünschmann residuals and the pointwise verdict."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    residuals: list[Jet]
    constant_terms: list[Any]
    holds: bool
