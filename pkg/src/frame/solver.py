"""The unique adapted frame.

With ``Z^0 = G V`` and the candidate
``BV^0 = Z^0 + alpha BX + beta BG + gamma0 BF0 + gamma1 BF1`` the four
normalized torsion components are affine in the unknowns:

    T01_0 = C1 - BX(beta) - 2k gamma1
    T01_1 = C2 + beta - 2 gamma0 - BX(alpha)
    T01_2 = -C3 + alpha
    T03_3 = -C4 + beta - 3 gamma0 + c~ alpha

where the C_i come from the zero ansatz and c~, the ``Z^3`` component of
``[BX, Z^3]``, vanishes for k > 3. The system is solved triangularly.
"""

from __future__ import annotations

import logging

from sympy.polys.domains import QQ

from src.bundle import BundleChart, lift_X
from src.errors import InternalConsistencyError
from src.fields import FrameSolver, VField
from src.frame.models import (
    CanonicalFrame,
    NormalizationConstants,
    TorsionFunctionals,
    UniquenessReport,
)
from src.frame.torsion import adapted_sequence, frame_solver, torsion_functionals, zero_ansatz
from src.jets import Jet, format_rational, to_rational

logger = logging.getLogger(__name__)


def _candidate(
    z0: VField,
    bundle: BundleChart,
    bx: VField,
    alpha: Jet,
    beta: Jet,
    gamma0: Jet,
    gamma1: Jet,
) -> VField:
    fund = bundle.fundamentals
    return z0 + bx * alpha + fund.bg * beta + fund.bf0 * gamma0 + fund.bf1 * gamma1


def normalization_constants(
    bundle: BundleChart, bx: VField, z0: VField, solver: FrameSolver
) -> NormalizationConstants:
    """The C_i of the zero ansatz and the k = 3 coefficient c~.

    c~ is isolated by probing T03_3 with the constant alpha = 1, whose BX
    derivative vanishes.
    """
    zero = torsion_functionals(z0, bundle, solver=solver, bx=bx)
    space = bundle.chart.space
    if bundle.k == 3:
        probe = torsion_functionals(z0 + bx, bundle, solver=solver, bx=bx)
        c_tilde = probe.t03_3 - zero.t03_3
    else:
        c_tilde = Jet.zero(space, zero.t03_3.order)
    return NormalizationConstants(
        c1=zero.t01_0,
        c2=zero.t01_1,
        c3=-zero.t01_2,
        c4=-zero.t03_3,
        c_tilde=c_tilde,
    )


def solve_normalization(bundle: BundleChart) -> CanonicalFrame:
    """Build the adapted frame with ``T01_0 = T01_1 = T01_2 = T03_3 = 0``.

    Raises:
        DegenerateFrameError: the zero-ansatz frame is not a basis at the point
        InsufficientOrderError: the order budget is exhausted
        InternalConsistencyError: the rebuilt frame violates a normalization
            condition
    """
    k = bundle.k
    bx = lift_X(bundle)
    z0 = zero_ansatz(bundle)
    zero_solver = frame_solver(bundle, bx, adapted_sequence(bx, z0, k))
    constants = normalization_constants(bundle, bx, z0, zero_solver)
    logger.debug("normalization constants valid to order %d", constants.c1.order)

    c = constants
    alpha = c.c3
    gamma0 = bx.apply(alpha) + c.c_tilde * alpha - c.c4 - c.c2
    beta = c.c4 - c.c_tilde * alpha + gamma0.scale(3)
    gamma1 = (c.c1 - bx.apply(beta)).scale(QQ(1, 2 * k))

    bv0 = _candidate(z0, bundle, bx, alpha, beta, gamma0, gamma1)
    bvs = adapted_sequence(bx, bv0, k)
    solver = frame_solver(bundle, bx, bvs)
    check = torsion_functionals(bv0, bundle, solver=solver, bx=bx)
    broken = check.nonzero()
    if broken:
        raise InternalConsistencyError(
            f"adapted frame violates {', '.join(broken)}", identity=broken[0]
        )
    fund = bundle.fundamentals
    return CanonicalFrame(
        bundle=bundle,
        bg=fund.bg,
        bf0=fund.bf0,
        bf1=fund.bf1,
        bx=bx,
        bv=bvs,
        alpha=alpha,
        beta=beta,
        gamma0=gamma0,
        gamma1=gamma1,
        constants=constants,
        solver=solver,
    )


def uniqueness_probe(frame: CanonicalFrame, delta: object = 1) -> UniquenessReport:
    """Perturb each unknown by a constant and list the conditions it breaks.

    The perturbed candidates are expanded with the zero-ansatz frame.
    """
    bundle = frame.bundle
    bx = frame.bx
    z0 = zero_ansatz(bundle)
    zero_solver = frame_solver(bundle, bx, adapted_sequence(bx, z0, bundle.k))
    delta = to_rational(delta)
    broken: dict[str, list[str]] = {}
    for name, value in frame.unknowns.items():
        unknowns = dict(frame.unknowns)
        unknowns[name] = value + delta
        candidate = _candidate(z0, bundle, bx, **unknowns)
        functionals: TorsionFunctionals = torsion_functionals(
            candidate, bundle, solver=zero_solver, bx=bx
        )
        broken[name] = functionals.nonzero()
        logger.debug("perturbing %s breaks %s", name, broken[name] or "nothing")
    return UniquenessReport(delta=format_rational(delta), broken=broken)
