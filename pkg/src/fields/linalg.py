"""Exact linear algebra over jets and over the rationals.

``FrameSolver`` factors the component matrix of a frame once by Gauss-Jordan
elimination with full pivoting on exactly invertible entries, then expands
any number of vector fields in that frame. ``constant_rank`` decides ranks at
the expansion point by fraction-free elimination.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

from src.errors import DegenerateFrameError, JetSpaceMismatchError
from src.fields.models import VField
from src.jets import Jet, Rational, jet_dot
from src.jets.rationals import denominator, numerator

logger = logging.getLogger(__name__)


# ── Rank at the expansion point ──


def constant_rank(rows: Sequence[Sequence[Rational]]) -> int:
    """Rank of a rational matrix by fraction-free (Bareiss) elimination."""
    matrix: list[list[int]] = []
    for row in rows:
        scale = math.lcm(*(denominator(v) for v in row)) if row else 1
        matrix.append([numerator(v) * (scale // denominator(v)) for v in row])
    if not matrix:
        return 0
    n_rows, n_cols = len(matrix), len(matrix[0])
    rank = 0
    previous = 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if matrix[r][col]), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        lead = matrix[rank][col]
        for r in range(rank + 1, n_rows):
            factor = matrix[r][col]
            row = matrix[r]
            for c in range(col + 1, n_cols):
                row[c] = (lead * row[c] - factor * matrix[rank][c]) // previous
            row[col] = 0
        previous = lead
        rank += 1
        if rank == n_rows:
            break
    return rank


def fields_rank(fields: Sequence[VField]) -> int:
    """Rank of the values of vector fields at the expansion point."""
    return constant_rank([f.constant_vector() for f in fields])


# ── Frame expansion ──


class FrameSolver:
    """Reusable expansion of vector fields in a fixed frame.

    Args:
        frame: One vector field per chart dimension

    Raises:
        DegenerateFrameError: the frame is not a basis at the expansion point
    """

    def __init__(self, frame: Sequence[VField]) -> None:
        if not frame:
            raise DegenerateFrameError("empty frame")
        chart = frame[0].chart
        n = chart.dim
        if len(frame) != n:
            raise DegenerateFrameError(
                f"frame of {len(frame)} fields on a {n}-dimensional chart is not a basis"
            )
        for f in frame:
            if f.chart.space != chart.space:
                raise JetSpaceMismatchError("frame fields on different charts")
        self.chart = chart
        self.frame = list(frame)
        self.size = n
        self.order = min(f.order for f in self.frame)
        self._rows = self._factor()

    def _factor(self) -> list[list[Jet]]:
        """Gauss-Jordan: returns, per chart column, the row of M^-1."""
        n = self.size
        space = self.chart.space
        order = min(f.order for f in self.frame)
        a = [list(f.components) for f in self.frame]
        b = [
            [Jet.constant(space, 1 if i == j else 0, order) for j in range(n)]
            for i in range(n)
        ]
        free_rows = set(range(n))
        free_cols = set(range(n))
        pivot_row_of_col: dict[int, int] = {}
        while free_cols:
            candidates = [
                (len(a[r][c]), r, c)
                for r in free_rows
                for c in free_cols
                if a[r][c].is_unit()
            ]
            if not candidates:
                self._raise_degenerate()
            _, r, c = min(candidates)
            inv = a[r][c].inverse()
            a[r] = [x if x.is_zero() else x * inv for x in a[r]]
            b[r] = [x if x.is_zero() else x * inv for x in b[r]]
            for i in range(n):
                if i == r or a[i][c].is_zero():
                    continue
                factor = a[i][c]
                a[i] = [
                    x if y.is_zero() else x - factor * y for x, y in zip(a[i], a[r])
                ]
                b[i] = [
                    x if y.is_zero() else x - factor * y for x, y in zip(b[i], b[r])
                ]
            free_rows.discard(r)
            free_cols.discard(c)
            pivot_row_of_col[c] = r
        return [b[pivot_row_of_col[c]] for c in range(n)]

    def _raise_degenerate(self) -> None:
        rank = fields_rank(self.frame)
        if rank < self.size:
            raise DegenerateFrameError(
                f"frame not a basis at expansion point (rank {rank} of {self.size})"
            )
        raise DegenerateFrameError("frame has no exactly invertible pivot at expansion point")

    def expand(self, w: VField) -> list[Jet]:
        """Coefficients ``c`` with ``w = sum_r c[r] * frame[r]``."""
        if w.chart.space != self.chart.space:
            raise JetSpaceMismatchError("field and frame on different charts")
        space = self.chart.space
        nonzero = [(col, wc) for col, wc in enumerate(w.components) if not wc.is_zero()]
        order = min(w.order, self.order)
        out = []
        for r in range(self.size):
            pairs = [
                (wc, self._rows[col][r])
                for col, wc in nonzero
                if not self._rows[col][r].is_zero()
            ]
            out.append(jet_dot(space, pairs, order))
        return out

    def recombine(self, coefficients: Sequence[Jet]) -> VField:
        return combine(coefficients, self.frame)


def combine(coefficients: Sequence[Jet], frame: Sequence[VField]) -> VField:
    """``sum_r coefficients[r] * frame[r]``."""
    chart = frame[0].chart
    comps = []
    for col in range(chart.dim):
        pairs = [(c, f.components[col]) for c, f in zip(coefficients, frame)]
        comps.append(jet_dot(chart.space, pairs))
    return VField(chart, comps)


def frame_expand(w: VField, frame: Sequence[VField]) -> list[Jet]:
    """Expand one field in a frame; build a ``FrameSolver`` to expand many."""
    return FrameSolver(frame).expand(w)


