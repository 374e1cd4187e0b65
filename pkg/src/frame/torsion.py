"""Torsion functionals of candidate frames.

A candidate ``BV^0 = G V + alpha BX + beta BG + gamma0 BF0 + gamma1 BF1``
differs from the zero ansatz ``G V`` by a field in
``S = span(BX, BG, BF0, BF1)``. S is preserved by ``ad_BX``, so
``ad_BX^i BV^0`` differs from ``ad_BX^i (G V)`` by a field in S as well, and
the BV-components of any field are the same in the candidate frame and in
the zero-ansatz frame. One ``FrameSolver`` for the zero ansatz therefore
serves every candidate.
"""

from __future__ import annotations

from src.bundle import BundleChart, lift_X
from src.fields import FrameSolver, VField, ad_sequence, lie_bracket
from src.frame.models import TorsionFunctionals, bv_index


def zero_ansatz(bundle: BundleChart) -> VField:
    """``G V``: the reference normal field scaled by the fiber coordinate G."""
    g = bundle.chart.coordinate("G", bundle.order)
    return bundle.v * g


def adapted_sequence(bx: VField, bv0: VField, k: int) -> list[VField]:
    """``[BV^0, ad_BX BV^0, ..., ad_BX^k BV^0]``."""
    return ad_sequence(bx, bv0, k)


def frame_solver(bundle: BundleChart, bx: VField, bvs: list[VField]) -> FrameSolver:
    """Solver for the frame ``(BG, BF0, BF1, BX, BV^0, ..., BV^k)``.

    Raises:
        DegenerateFrameError: the fields are not a basis at the bundle point
    """
    return FrameSolver([*bundle.fundamentals.as_list(), bx, *bvs])


def torsion_functionals(
    candidate: VField,
    bundle: BundleChart,
    solver: FrameSolver | None = None,
    bx: VField | None = None,
) -> TorsionFunctionals:
    """``T01_0, T01_1, T01_2`` and ``T03_3`` of the frame generated by ``candidate``.

    Args:
        candidate: Trial ``BV^0``
        bundle: The bundle chart
        solver: Expansion in the zero-ansatz frame or in the candidate frame;
            built from the candidate when omitted
        bx: The lifted projective field, recomputed when omitted

    Raises:
        DegenerateFrameError: the frame is not a basis at the bundle point
        InsufficientOrderError: the order budget is exhausted
    """
    bx = bx if bx is not None else lift_X(bundle)
    depth = bundle.k if solver is None else 3
    bvs = adapted_sequence(bx, candidate, depth)
    if solver is None:
        solver = frame_solver(bundle, bx, bvs)
    t01 = solver.expand(lie_bracket(bvs[0], bvs[1]))
    t03 = solver.expand(lie_bracket(bvs[0], bvs[3]))
    return TorsionFunctionals(
        t01_0=t01[bv_index(0)],
        t01_1=t01[bv_index(1)],
        t01_2=t01[bv_index(2)],
        t03_3=t03[bv_index(3)],
    )
