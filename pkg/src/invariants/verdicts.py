"""Classification verdicts from the structure functions."""

from __future__ import annotations

import logging
from collections.abc import Sequence

from sympy.polys.domains import QQ

from src.errors import InsufficientOrderError
from src.fields import VField, fields_rank, lie_bracket
from src.frame import CanonicalFrame, ResidualReport, bf1_residual, exact_residual
from src.invariants.models import (
    DerivedFlag,
    EquationTypeVerdict,
    FlatnessEvidence,
    FlatnessStatus,
    FlatnessVerdict,
    HomogeneityReport,
    StructureTable,
    TorsionTable,
)
from src.jets import Jet, format_rational
from src.jets.rationals import rational_power

logger = logging.getLogger(__name__)


def equation_type_test(table: TorsionTable) -> EquationTypeVerdict:
    """``T^{pq}_r`` vanishes at the point whenever ``r > max(p, q) + 1``."""
    nonzero: list[str] = []
    full = True
    checked = 0
    for (p, q, r), jet in table.torsion_items():
        if r <= max(p, q) + 1:
            continue
        checked += 1
        if not jet.is_zero():
            full = False
        value = table.constant_term(jet)
        if value:
            nonzero.append(f"T{p}{q}_{r} = {format_rational(value)}")
    return EquationTypeVerdict(
        holds=not nonzero, checked=checked, nonzero=nonzero, full_jet_vanishing=full
    )


def bf1_exact_check(frame: CanonicalFrame) -> ResidualReport:
    """``[BF1, BV^i] = i(i-1-k) BV^{i-1}`` as exact identities, i = 0..k."""
    residuals = []
    for i in range(frame.k + 1):
        label, residual = bf1_residual(frame, i)
        residuals.append(exact_residual(label, residual))
    return ResidualReport(name="bf1-exact", residuals=residuals)


# ── Flatness ──


def _low_order_witness(jet: Jet, laurent_point: dict) -> str | None:
    """First nonzero coefficient of degree 0 or 1 after fixing the exact variables."""
    if jet.order < 1:
        raise InsufficientOrderError(
            f"flatness needs structure functions valid to order 1, got {jet.order}"
        )
    for exponents, coeff in jet.specialize(laurent_point).items():
        if sum(exponents) > 1:
            break
        return format_rational(coeff)
    return None


def point_flatness(
    torsion: TorsionTable, w: Sequence[Jet], label: str = "p0"
) -> FlatnessEvidence:
    """Do all torsion entries and all ``w_i`` vanish to first order at the point?"""
    laurent_point = torsion.chart.laurent_point
    named = [(f"T{p}{q}_{r}", jet) for (p, q, r), jet in torsion.torsion_items()]
    named += [(f"w{i}", jet) for i, jet in enumerate(w)]
    for name, jet in named:
        value = _low_order_witness(jet, laurent_point)
        if value is not None:
            return FlatnessEvidence(
                label=label,
                flat=False,
                witness=name,
                witness_value=value,
                entries_checked=len(named),
            )
    return FlatnessEvidence(label=label, flat=True, entries_checked=len(named))


def flatness_verdict(points: Sequence[FlatnessEvidence]) -> FlatnessVerdict:
    """FLAT when every tested point is flat."""
    if not points:
        raise ValueError("flatness needs at least one tested point")
    status = FlatnessStatus.FLAT if all(p.flat for p in points) else FlatnessStatus.NON_FLAT
    return FlatnessVerdict(status=status, points=list(points))


# ── Homogeneity ──


def w_homogeneity_check(structure: StructureTable) -> HomogeneityReport:
    """``w_i`` is a multiple of ``F0^-(k+1-i)``.

    Checked exactly on the F0 exponents of every term, and on constant terms
    by doubling F0 at the bundle point.
    """
    chart = structure.chart
    f0 = chart.index("F0")
    k = structure.k
    exponents: list[list[int]] = []
    exact = True
    scaling = True
    base = chart.laurent_point
    doubled = {**base, f0: base[f0] * 2}
    for i, w in enumerate(structure.w):
        weight = -(k + 1 - i)
        found = sorted({w.space.exponent(key, f0) for key in w.terms})
        exponents.append(found)
        if any(e != weight for e in found):
            exact = False
        expected = w.constant_term(base) * rational_power(QQ(2), weight)
        if w.constant_term(doubled) != expected:
            scaling = False
    return HomogeneityReport(holds=exact and scaling, exponents=exponents, scaling_holds=scaling)


# ── Derived flag ──


def derived_flag_ranks(frame: CanonicalFrame) -> DerivedFlag:
    """Constant-term ranks of the derived flag of ``D = span(BV^0, BX, BG, BF0, BF1)``.

    ``D^(1) = D`` and ``D^(i+1) = D^(i) + [D, D^(i)]``; the expected ranks are
    ``4 + i``.

    Only brackets that raise the rank at the point are kept as new generators.
    """
    k = frame.k
    first = [frame.bv[0], frame.bx, frame.bg, frame.bf0, frame.bf1]
    basis: list[VField] = []
    for field in first:
        if fields_rank([*basis, field]) > len(basis):
            basis.append(field)
    ranks = [len(basis)]
    new = list(basis)
    for _ in range(k):
        added: list[VField] = []
        for a in first:
            for b in new:
                bracket = lie_bracket(a, b)
                if fields_rank([*basis, *added, bracket]) > len(basis) + len(added):
                    added.append(bracket)
        basis.extend(added)
        new = added
        ranks.append(len(basis))
    expected = [4 + i for i in range(1, k + 2)]
    if ranks != expected:
        logger.info("derived flag ranks %s differ from %s", ranks, expected)
    return DerivedFlag(ranks=ranks, expected=expected)
