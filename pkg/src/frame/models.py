"""Data models for the canonical frame and its checks."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from src.bundle import BundleChart
from src.fields import FrameSolver, VField
from src.jets import Jet

# Frame layout: BG, BF0, BF1, BX, then BV^0 .. BV^k
BG, BF0, BF1, BX = range(4)
BV_OFFSET = 4


def bv_index(r: int) -> int:
    """Position of ``BV^r`` in the frame."""
    return BV_OFFSET + r


class TorsionFunctionals(BaseModel):
    """The four torsion components fixed to zero by the adapted frame."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    t01_0: Jet
    t01_1: Jet
    t01_2: Jet
    t03_3: Jet

    def as_dict(self) -> dict[str, Jet]:
        return {
            "T01_0": self.t01_0,
            "T01_1": self.t01_1,
            "T01_2": self.t01_2,
            "T03_3": self.t03_3,
        }

    def nonzero(self) -> list[str]:
        return [name for name, jet in self.as_dict().items() if not jet.is_zero()]


class NormalizationConstants(BaseModel):
    """Inhomogeneous parts of the normalization system.

    ``c_tilde`` is the algebraic coefficient of alpha in the T03_3 condition;
    it is zero unless k = 3.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    c1: Jet
    c2: Jet
    c3: Jet
    c4: Jet
    c_tilde: Jet


class CanonicalFrame(BaseModel):
    """The adapted frame ``(BG, BF0, BF1, BX, BV^0, ..., BV^k)``."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    bundle: BundleChart
    bg: VField
    bf0: VField
    bf1: VField
    bx: VField
    bv: list[VField] = Field(description="BV^0 .. BV^k with BV^i = ad_BX^i BV^0")
    alpha: Jet
    beta: Jet
    gamma0: Jet
    gamma1: Jet
    constants: NormalizationConstants
    solver: FrameSolver = Field(exclude=True, description="Expansion in this frame")

    @property
    def k(self) -> int:
        return self.bundle.k

    @property
    def fields(self) -> list[VField]:
        return [self.bg, self.bf0, self.bf1, self.bx, *self.bv]

    @property
    def names(self) -> list[str]:
        return ["BG", "BF0", "BF1", "BX", *(f"BV{i}" for i in range(self.k + 1))]

    @property
    def order(self) -> int:
        return min(f.order for f in self.fields)

    @property
    def unknowns(self) -> dict[str, Jet]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma0": self.gamma0,
            "gamma1": self.gamma1,
        }


class ResidualKind(str, Enum):
    """How a residual is tested."""

    EXACT = "exact"  # every component vanishes
    MOD_FRAME = "mod_frame"  # BV components vanish, modulo BX, BG, BF0, BF1


class Residual(BaseModel):
    """Outcome of one identity check."""

    identity: str
    kind: ResidualKind = ResidualKind.EXACT
    holds: bool
    order: int = Field(description="Validity order the identity was checked to")
    witness: str = Field(default="", description="First nonzero component, if any")

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")


class ResidualReport(BaseModel):
    """A family of identity checks."""

    name: str
    residuals: list[Residual] = Field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.residuals)

    def failures(self) -> list[Residual]:
        return [r for r in self.residuals if not r.holds]

    def first_failure(self) -> str | None:
        failed = self.failures()
        return failed[0].identity if failed else None

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")


class UniquenessReport(BaseModel):
    """Which adapted-frame conditions each constant perturbation breaks."""

    delta: str
    broken: dict[str, list[str]]

    @property
    def all_break(self) -> bool:
        return all(self.broken.values())
