"""Universal coefficients of the adapted sequence.

Modulo ``S = span(BX, BG, BF0, BF1)`` every ``BV^i`` is

    BV^i = G F0^{-i} (ad_X^i V + sum_{j<i} c^i_j F1^{i-j} ad_X^j V)

with rational constants ``c^i_j`` that depend on k alone. They satisfy

    c^{i+1}_j = c^i_{j-1} + (i + j - k) c^i_j,   c^i_i = 1,

so ``c^1_0 = -k`` and ``c^2_1 = 2 - 2k``. ``adapted_coefficients`` reads them
off the frame expansion at a fiber point with ``F1 = 1``; ``coefficient_table``
evaluates the recursion.
"""

from __future__ import annotations

import logging

from sympy.polys.domains import QQ

from src.bundle import lift_X, make_bundle_chart
from src.errors import InternalConsistencyError
from src.fields import FrameSolver, ad_sequence
from src.frame.models import bv_index
from src.frame.torsion import adapted_sequence, zero_ansatz
from src.jets import Rational
from src.normalize import ReferenceFrame

logger = logging.getLogger(__name__)

COEFFICIENT_FIBER = (1, 1, 1)


def coefficient_name(i: int, j: int) -> str:
    return f"c{i}_{j}"


def coefficient_table(k: int) -> dict[str, Rational]:
    """``c^i_j`` for ``0 <= j < i <= k`` from the recursion."""
    row: list[Rational] = [QQ(1)]
    table: dict[str, Rational] = {}
    for i in range(k):
        nxt = [QQ(0)] * (i + 2)
        for j in range(i + 2):
            below = row[j - 1] if j >= 1 else QQ(0)
            here = row[j] * (i + j - k) if j <= i else QQ(0)
            nxt[j] = below + here
        row = nxt
        for j in range(i + 1):
            table[coefficient_name(i + 1, j)] = row[j]
    return table


def adapted_coefficients(reference: ReferenceFrame) -> dict[str, Rational]:
    """``c^i_j`` read from the adapted sequence of the zero ansatz.

    Any BV^0 in ``G V + S`` gives the same values, since ``ad_BX`` preserves S.

    Raises:
        DegenerateFrameError: the pair is not regular at the expansion point
        InternalConsistencyError: the leading coefficient of some BV^i is not 1
    """
    k = reference.k
    bundle = make_bundle_chart(reference, COEFFICIENT_FIBER)
    chart = bundle.chart
    bx = lift_X(bundle)
    bvs = adapted_sequence(bx, zero_ansatz(bundle), k)
    basis = ad_sequence(bundle.x, bundle.v, k)
    solver = FrameSolver([*bundle.fundamentals.as_list(), bx, *basis])

    table: dict[str, Rational] = {}
    for i in range(1, k + 1):
        coefficients = solver.expand(bvs[i])
        leading = chart.constant_term(coefficients[bv_index(i)])
        if leading != 1:
            raise InternalConsistencyError(
                f"leading coefficient of BV^{i} is {leading}, expected 1",
                f"BV{i}=G/F0^{i} ad_X^{i} V+lower",
            )
        for j in range(i):
            table[coefficient_name(i, j)] = chart.constant_term(coefficients[bv_index(j)])
    logger.debug("adapted coefficients for k=%d: %d values", k, len(table))
    return table
