"""Torsion and structure-function tables of the adapted frame."""

from __future__ import annotations

import logging
from itertools import combinations

from src.fields import lie_bracket
from src.frame import CanonicalFrame, bv_index
from src.invariants.models import StructureTable, TorsionTable
from src.jets import Jet

logger = logging.getLogger(__name__)


def torsion_table(frame: CanonicalFrame) -> TorsionTable:
    """Expand every ``[BV^p, BV^q]``, ``p < q``, in the frame.

    Raises:
        InsufficientOrderError: the frame is not valid to order 1
    """
    entries = {
        (p, q): frame.solver.expand(lie_bracket(frame.bv[p], frame.bv[q]))
        for p, q in combinations(range(frame.k + 1), 2)
    }
    logger.debug("torsion table with %d brackets", len(entries))
    return TorsionTable(
        k=frame.k, chart=frame.bundle.chart, names=frame.names, entries=entries
    )


def structure_table(frame: CanonicalFrame, torsion: TorsionTable | None = None) -> StructureTable:
    """Expand every bracket of two frame fields in the frame.

    Brackets already in ``torsion`` are reused.
    """
    fields = frame.fields
    entries = {}
    for a, b in combinations(range(len(fields)), 2):
        if torsion is not None and a >= bv_index(0):
            entries[(a, b)] = torsion.entries[(a - bv_index(0), b - bv_index(0))]
            continue
        entries[(a, b)] = frame.solver.expand(lie_bracket(fields[a], fields[b]))
    return StructureTable(
        k=frame.k, chart=frame.bundle.chart, names=frame.names, entries=entries
    )


def w_functions(frame: CanonicalFrame) -> list[Jet]:
    """``w_0 .. w_k``: the BV part of ``[BX, BV^k]``."""
    coefficients = frame.solver.expand(lie_bracket(frame.bx, frame.bv[frame.k]))
    return [coefficients[bv_index(i)] for i in range(frame.k + 1)]
