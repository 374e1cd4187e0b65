"""Structural identities of the adapted frame.

Exact identities:

    [BG, BX] = 0,  [BF0, BX] = -BX,  [BF1, BX] = -2 BF0 - k BG,
    [BG, BV^i] = BV^i,  [BF0, BV^i] = -i BV^i

and, modulo ``BX, BG, BF0, BF1``,

    [BF1, BV^i] = i(i-1-k) BV^{i-1}.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

from src.fields import FrameSolver, VField, lie_bracket
from src.frame.models import (
    CanonicalFrame,
    Residual,
    ResidualKind,
    ResidualReport,
    bv_index,
)
from src.jets import Jet

logger = logging.getLogger(__name__)


def _first_nonzero(names: Sequence[str], jets: Sequence[Jet]) -> str:
    for name, jet in zip(names, jets, strict=True):
        if not jet.is_zero():
            return f"{name}: {jet}"
    return ""


def exact_residual(identity: str, residual: VField) -> Residual:
    """Check that every component of ``residual`` vanishes."""
    witness = _first_nonzero([f"d_{n}" for n in residual.chart.names], residual.components)
    return Residual(
        identity=identity,
        kind=ResidualKind.EXACT,
        holds=not witness,
        order=residual.order,
        witness=witness,
    )


def mod_frame_residual(
    identity: str, residual: VField, solver: FrameSolver, names: Sequence[str]
) -> Residual:
    """Check that the BV components of ``residual`` vanish."""
    coefficients = solver.expand(residual)
    start = bv_index(0)
    witness = _first_nonzero(names[start:], coefficients[start:])
    order = min(c.order for c in coefficients)
    return Residual(
        identity=identity,
        kind=ResidualKind.MOD_FRAME,
        holds=not witness,
        order=order,
        witness=witness,
    )


def bf1_coefficient(i: int, k: int) -> int:
    """Coefficient of ``BV^{i-1}`` in ``[BF1, BV^i]``."""
    return i * (i - 1 - k)


def bf1_residual(frame: CanonicalFrame, i: int) -> tuple[str, VField]:
    """``[BF1, BV^i] - i(i-1-k) BV^{i-1}`` with its identity label."""
    c = bf1_coefficient(i, frame.k)
    bracket = lie_bracket(frame.bf1, frame.bv[i])
    label = f"[BF1,BV{i}]={c}BV{i - 1}" if i else f"[BF1,BV{i}]=0"
    if i == 0 or c == 0:
        return label, bracket
    return label, bracket - frame.bv[i - 1] * c


def verify_structural(frame: CanonicalFrame) -> ResidualReport:
    """Residuals of the structural identities of ``frame``."""
    k = frame.k
    bx = frame.bx
    out: list[Residual] = [
        exact_residual("[BG,BX]=0", lie_bracket(frame.bg, bx)),
        exact_residual("[BF0,BX]=-BX", lie_bracket(frame.bf0, bx) + bx),
        exact_residual(
            "[BF1,BX]=-2BF0-kBG",
            lie_bracket(frame.bf1, bx) + frame.bf0 * 2 + frame.bg * k,
        ),
    ]
    for i, bv in enumerate(frame.bv):
        out.append(exact_residual(f"[BG,BV{i}]=BV{i}", lie_bracket(frame.bg, bv) - bv))
    for i, bv in enumerate(frame.bv):
        label = f"[BF0,BV{i}]=-{i}BV{i}" if i else "[BF0,BV0]=0"
        out.append(exact_residual(label, lie_bracket(frame.bf0, bv) + bv * i))
    for i in range(k + 1):
        label, residual = bf1_residual(frame, i)
        out.append(mod_frame_residual(label + " mod S", residual, frame.solver, frame.names))
    report = ResidualReport(name="structural", residuals=out)
    if not report.holds:
        logger.warning("structural identity failed: %s", report.first_failure())
    return report
