"""Problem specifications and analysis reports.

Everything here is plain data: rationals are carried as ``p/q`` strings so
that evidence crosses process boundaries and renders to text and JSON
without loss.
"""

from __future__ import annotations

from pydantic import BaseModel, Field, field_validator

from src.fields import RegularityProfile
from src.frame import ResidualReport, UniquenessReport
from src.invariants import (
    DerivedFlag,
    EquationTypeVerdict,
    FlatnessEvidence,
    FlatnessVerdict,
    HomogeneityReport,
)
from src.jets import format_rational, to_rational

REPORT_SCHEMA = "gl2frame-report/1"
DEFAULT_FIBER = ("1", "0", "1")


def default_order(k: int) -> int:
    """Jet order budget ``2k + max(k, 4) + 5``."""
    return 2 * k + max(k, 4) + 5


def _normalize_rational(value: object) -> str:
    try:
        return format_rational(to_rational(value))
    except TypeError as exc:
        raise ValueError(str(exc)) from exc


# ── Problem ──


class ProblemSpec(BaseModel):
    """An equation ``x^(k+1) = F(t, x0, ..., xk)`` and the analysis options.

    ``validate_problem`` checks the invariants (k > 2, F0 != 0, ...); the
    model itself only normalizes the rational fields.
    """

    k: int
    rhs: str
    base_point: dict[str, str] = Field(default_factory=dict, description="t, x0..xk values")
    fiber_point: tuple[str, str, str] | None = Field(default=None, description="(F0, F1, G)")
    order: int | None = None
    samples: int | None = None
    seed: int | None = None
    source: str = Field(default="", description="Problem file the spec was read from")

    @field_validator("base_point", mode="before")
    @classmethod
    def _base_rationals(cls, value: dict) -> dict[str, str]:
        return {str(name): _normalize_rational(v) for name, v in (value or {}).items()}

    @field_validator("fiber_point", mode="before")
    @classmethod
    def _fiber_rationals(cls, value: object) -> tuple[str, str, str] | None:
        if value is None:
            return None
        values = tuple(value)  # type: ignore[arg-type]
        if len(values) != 3:
            raise ValueError("fiber point needs the three values F0, F1, G")
        return tuple(_normalize_rational(v) for v in values)  # type: ignore[return-value]

    @property
    def variables(self) -> list[str]:
        return ["t", *(f"x{i}" for i in range(self.k + 1))]

    def resolved_order(self) -> int:
        return self.order if self.order is not None else default_order(self.k)

    def resolved_fiber(self) -> tuple[str, str, str]:
        return self.fiber_point or DEFAULT_FIBER


# ── Evidence ──


class NormalizationEvidence(BaseModel):
    """Solved unknowns and constants at the bundle point."""

    alpha: str
    beta: str
    gamma0: str
    gamma1: str
    c_tilde: str | None = Field(default=None, description="Reported for k = 3 only")
    adapted: dict[str, str] = Field(description="T01_0, T01_1, T01_2, T03_3 at the point")
    c_ij: dict[str, str] = Field(
        default_factory=dict, description="Coefficients c^i_j of BV^i in the ad_X^j V basis"
    )


class WunschmannEvidence(BaseModel):
    holds: bool
    constant_terms: list[str]


class PointEvidence(BaseModel):
    """Everything computed at one expansion point."""

    label: str
    base_point: dict[str, str]
    fiber_point: tuple[str, str, str]
    order: int
    regularity: RegularityProfile
    wunschmann: WunschmannEvidence
    normalization: NormalizationEvidence
    torsion: dict[str, str] = Field(description="Constant terms of T^{pq}_r, p < q")
    torsion_jets: dict[str, str] | None = None
    w: list[str]
    structural: ResidualReport
    bf1_exact: ResidualReport
    model: ResidualReport
    obstruction: ResidualReport
    equation_type: EquationTypeVerdict
    flatness: FlatnessEvidence
    homogeneity: HomogeneityReport
    derived_flag: DerivedFlag
    uniqueness: UniquenessReport | None = None
    timings: dict[str, float] = Field(default_factory=dict)


class InvariantReport(BaseModel):
    """Result of ``analyze``: the primary point plus the flatness samples."""

    report_schema: str = REPORT_SCHEMA
    problem: ProblemSpec
    seed: int
    order: int
    primary: PointEvidence
    flatness: FlatnessVerdict
    timings: dict[str, float] = Field(default_factory=dict)

    @property
    def verdicts(self) -> dict[str, str]:
        primary = self.primary
        return {
            "regular": _flag(primary.regularity.regular),
            "wunschmann": _flag(primary.wunschmann.holds),
            "equation_type": _flag(primary.equation_type.holds),
            "flat": _flag(self.flatness.flat),
        }

    def to_dict(self) -> dict:
        data = self.model_dump(mode="json")
        data["verdicts"] = self.verdicts
        return data


class VerificationReport(BaseModel):
    """Result of ``verify``: every identity suite at the primary point."""

    problem: ProblemSpec
    order: int
    suites: list[ResidualReport]
    uniqueness: UniquenessReport | None = None

    @property
    def passed(self) -> bool:
        suites_hold = all(s.holds for s in self.suites)
        return suites_hold and (self.uniqueness is None or self.uniqueness.all_break)

    @property
    def first_failure(self) -> str | None:
        for suite in self.suites:
            failed = suite.first_failure()
            if failed:
                return f"{suite.name}: {failed}"
        if self.uniqueness is not None and not self.uniqueness.all_break:
            kept = [name for name, broken in self.uniqueness.broken.items() if not broken]
            return f"uniqueness: perturbing {', '.join(kept)} keeps the frame adapted"
        return None

    def to_dict(self) -> dict:
        data = self.model_dump(mode="json")
        data["passed"] = self.passed
        data["first_failure"] = self.first_failure
        return data


class CompareReport(BaseModel):
    """Necessary-condition comparison of two problems."""

    first: InvariantReport
    second: InvariantReport
    differing: list[str] = Field(description="Verdicts that differ")

    @property
    def verdict(self) -> str:
        return "distinguishable" if self.differing else "not distinguished at tested points"

    def to_dict(self) -> dict:
        return {
            "first": self.first.to_dict(),
            "second": self.second.to_dict(),
            "differing": list(self.differing),
            "verdict": self.verdict,
        }


def _flag(value: bool) -> str:
    return "true" if value else "false"
