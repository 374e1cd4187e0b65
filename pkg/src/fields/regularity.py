"""Regularity of a pair (X, V) at the expansion point.

The pair is regular when ``X, V, ad_X V, ..., ad_X^i V`` span ``i + 2``
dimensions for ``i = 1..k`` and the last step fills the tangent space.
"""

from __future__ import annotations

import logging

from pydantic import BaseModel, Field

from src.fields.calculus import ad_sequence
from src.fields.linalg import fields_rank
from src.fields.models import VField

logger = logging.getLogger(__name__)


class RegularityProfile(BaseModel):
    """Outcome of the regularity check."""

    regular: bool
    ranks: list[int] = Field(description="rank of {X, V, ..., ad^i V} for i = 1..k")
    dimension: int

    def to_dict(self) -> dict:
        return self.model_dump()


def regularity_check(x: VField, v: VField, k: int) -> RegularityProfile:
    """Pointwise ranks of the iterated brackets of ``V`` by ``X``.

    Raises:
        InsufficientOrderError: fewer than k orders available for the brackets
    """
    powers = ad_sequence(x, v, k)
    ranks = [fields_rank([x, *powers[: i + 1]]) for i in range(1, k + 1)]
    dimension = x.chart.dim
    regular = all(rank == i + 2 for i, rank in enumerate(ranks, start=1)) and (
        ranks[-1] == dimension
    )
    if not regular:
        logger.info("pair is not regular at the expansion point: ranks %s", ranks)
    return RegularityProfile(regular=regular, ranks=ranks, dimension=dimension)
