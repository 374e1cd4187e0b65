"""Lie brackets and iterated adjoint actions."""

from __future__ import annotations

from src.errors import InsufficientOrderError, JetSpaceMismatchError
from src.fields.models import VField


def lie_bracket(a: VField, b: VField) -> VField:
    """``[A, B]^i = A(B^i) - B(A^i)``.

    Raises:
        InsufficientOrderError: a series derivative is needed from an order-0 jet
    """
    if a.chart.space != b.chart.space:
        raise JetSpaceMismatchError("bracket of vector fields on different charts")
    try:
        return VField(
            a.chart,
            [a.apply(bi) - b.apply(ai) for ai, bi in zip(a.components, b.components)],
        )
    except InsufficientOrderError as exc:
        raise InsufficientOrderError(f"insufficient order for a Lie bracket: {exc}") from exc


def ad_power(a: VField, b: VField, i: int) -> VField:
    """``ad_A^i B``, the i-fold left bracket by A."""
    if i < 0:
        raise ValueError("ad power must be non-negative")
    for _ in range(i):
        b = lie_bracket(a, b)
    return b


def ad_sequence(a: VField, b: VField, n: int) -> list[VField]:
    """``[B, ad_A B, ..., ad_A^n B]``."""
    out = [b]
    for _ in range(n):
        out.append(lie_bracket(a, out[-1]))
    return out
