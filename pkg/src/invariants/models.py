"""Data models for structure functions and classification verdicts."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from src.fields import Chart, VField
from src.frame.models import ResidualReport, bv_index
from src.jets import Jet, Rational, format_rational


class FlatnessStatus(str, Enum):
    """Flatness verdict at the tested points."""

    FLAT = "flat"
    NON_FLAT = "non-flat"


class TorsionTable(BaseModel):
    """Expansions of ``[BV^p, BV^q]`` for ``p < q`` in the full frame.

    ``entries[(p, q)]`` holds all ``k + 5`` coefficients; the BV part gives
    ``T^{pq}_r``, the remaining four are the discarded BG, BF0, BF1, BX parts.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    k: int
    chart: Chart
    names: list[str]
    entries: dict[tuple[int, int], list[Jet]]

    def t(self, p: int, q: int, r: int) -> Jet:
        """``T^{pq}_r`` with ``T^{qp}_r = -T^{pq}_r``."""
        if p == q:
            some = next(iter(self.entries.values()))[0]
            return Jet.zero(some.space, some.order)
        if p > q:
            return -self.entries[(q, p)][bv_index(r)]
        return self.entries[(p, q)][bv_index(r)]

    def constant_term(self, jet: Jet) -> Rational:
        return self.chart.constant_term(jet)

    def torsion_items(self) -> list[tuple[tuple[int, int, int], Jet]]:
        """All ``((p, q, r), T^{pq}_r)`` with ``p < q``, in index order."""
        return [
            ((p, q, r), coefficients[bv_index(r)])
            for (p, q), coefficients in sorted(self.entries.items())
            for r in range(self.k + 1)
        ]

    def constant_terms(self) -> dict[str, str]:
        return {
            f"T{p}{q}_{r}": format_rational(self.constant_term(jet))
            for (p, q, r), jet in self.torsion_items()
        }


class StructureTable(BaseModel):
    """Every ``[E_a, E_b]``, ``a < b``, of the frame expanded in the frame."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    k: int
    chart: Chart
    names: list[str]
    entries: dict[tuple[int, int], list[Jet]]

    def coefficient(self, a: int, b: int, c: int) -> Jet:
        if a > b:
            return -self.entries[(b, a)][c]
        return self.entries[(a, b)][c]

    @property
    def w(self) -> list[Jet]:
        """``w_0 .. w_k``: the BV part of ``[BX, BV^k]``."""
        bx = self.names.index("BX")
        return [self.coefficient(bx, bv_index(self.k), bv_index(i)) for i in range(self.k + 1)]


class EquationTypeVerdict(BaseModel):
    """Vanishing of ``T^{pq}_r`` for ``r > max(p, q) + 1``."""

    holds: bool
    checked: int = Field(description="Number of entries tested")
    nonzero: list[str] = Field(default_factory=list, description="Entries nonzero at the point")
    full_jet_vanishing: bool = Field(description="All tested entries vanish as jets")


class FlatnessEvidence(BaseModel):
    """Constant and first-order coefficients of all structure functions at one point."""

    label: str
    flat: bool
    witness: str = ""
    witness_value: str = ""
    entries_checked: int = 0


class FlatnessVerdict(BaseModel):
    """Flatness at finitely many points, to first order."""

    status: FlatnessStatus
    points: list[FlatnessEvidence]
    qualifier: str = "flat at tested points to tested order"

    @property
    def flat(self) -> bool:
        return self.status is FlatnessStatus.FLAT

    @property
    def witness(self) -> str:
        for point in self.points:
            if not point.flat:
                return f"{point.label}: {point.witness} = {point.witness_value}"
        return ""


class HomogeneityReport(BaseModel):
    """F0 weights of ``w_0 .. w_k``; ``w_i`` must carry ``F0^-(k+1-i)``."""

    holds: bool
    exponents: list[list[int]] = Field(description="F0 exponents found per w_i")
    scaling_holds: bool = Field(description="Constant terms scale by 2^-(k+1-i) as F0 doubles")


class DerivedFlag(BaseModel):
    """Constant-term ranks of the derived flag of ``span(BV^0, BX, BG, BF0, BF1)``."""

    ranks: list[int]
    expected: list[int]

    @property
    def holds(self) -> bool:
        return self.ranks == self.expected


class ModelCoframe(BaseModel):
    """The rescaled frame ``(BG, BH, BX, BY, BW^0, ..., BW^k)`` and its brackets.

    ``obstruction`` is ``[BX, BW^k]``, which vanishes exactly when all ``w_i``
    do; it is reported, not asserted.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    bg: VField
    bh: VField
    bx: VField
    by: VField
    bw: list[VField]
    brackets: ResidualReport
    obstruction: ResidualReport

    @property
    def holds(self) -> bool:
        return self.brackets.holds
