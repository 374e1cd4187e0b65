"""The rescaled model coframe.

``BH = 2 BF0 + k BG``, ``BY = BF1`` and ``BW^i = BV^i / i!`` turn the
structural identities into the bracket table

    [BX, BY] = BH,  [BH, BX] = -2 BX,  [BH, BY] = 2 BY,
    [BX, BW^i] = (i+1) BW^{i+1}  (i < k),
    [BY, BW^i] = -(k-i+1) BW^{i-1},
    [BH, BW^i] = (k-2i) BW^i,  [BG, BW^i] = BW^i

with ``BG`` commuting with ``BX``, ``BY`` and ``BH``.
"""

from __future__ import annotations

import logging
from math import factorial

from sympy.polys.domains import QQ

from src.fields import VField, lie_bracket
from src.frame import CanonicalFrame, ResidualReport, exact_residual
from src.invariants.models import ModelCoframe

logger = logging.getLogger(__name__)


def model_coframe(frame: CanonicalFrame, equation_type: bool = True) -> ModelCoframe:
    """Build the rescaled frame and check its bracket table exactly.

    Args:
        frame: The adapted frame
        equation_type: Also check the brackets with ``BW^i``, which hold for
            pairs of equation type
    """
    k = frame.k
    bg, bx = frame.bg, frame.bx
    bh = frame.bf0 * 2 + bg * k
    by = frame.bf1
    bw: list[VField] = [bv * QQ(1, factorial(i)) for i, bv in enumerate(frame.bv)]

    checks = [
        exact_residual("[BX,BY]=BH", lie_bracket(bx, by) - bh),
        exact_residual("[BH,BX]=-2BX", lie_bracket(bh, bx) + bx * 2),
        exact_residual("[BH,BY]=2BY", lie_bracket(bh, by) - by * 2),
        exact_residual("[BG,BX]=0", lie_bracket(bg, bx)),
        exact_residual("[BG,BY]=0", lie_bracket(bg, by)),
        exact_residual("[BG,BH]=0", lie_bracket(bg, bh)),
    ]
    if equation_type:
        for i in range(k):
            checks.append(
                exact_residual(
                    f"[BX,BW{i}]={i + 1}BW{i + 1}", lie_bracket(bx, bw[i]) - bw[i + 1] * (i + 1)
                )
            )
        for i in range(k + 1):
            bracket = lie_bracket(by, bw[i])
            if i:
                c = -(k - i + 1)
                checks.append(
                    exact_residual(f"[BY,BW{i}]={c}BW{i - 1}", bracket - bw[i - 1] * c)
                )
            else:
                checks.append(exact_residual("[BY,BW0]=0", bracket))
        for i in range(k + 1):
            c = k - 2 * i
            checks.append(
                exact_residual(f"[BH,BW{i}]={c}BW{i}", lie_bracket(bh, bw[i]) - bw[i] * c)
            )
            checks.append(exact_residual(f"[BG,BW{i}]=BW{i}", lie_bracket(bg, bw[i]) - bw[i]))

    obstruction = exact_residual(f"[BX,BW{k}]=0", lie_bracket(bx, bw[k]))
    brackets = ResidualReport(name="model", residuals=checks)
    if not brackets.holds:
        logger.warning("model bracket failed: %s", brackets.first_failure())
    return ModelCoframe(
        bg=bg,
        bh=bh,
        bx=bx,
        by=by,
        bw=bw,
        brackets=brackets,
        obstruction=ResidualReport(name="w-obstruction", residuals=[obstruction]),
    )
