"""Normalization of the pair (X_F, d/dx_k) to a projective X and a normal V.

The expansion ``ad_X^{k+1} V = sum_i a_i ad_X^i V + a_X X`` is normalized in
two steps. Rescaling ``V -> g1 V`` with ``X_F(g1) = -a_k/(k+1) g1`` kills
``a_k`` and turns ``a_{k-1}`` into

    a'_{k-1} = a_{k-1} - (k/2) X_F(a_k) + k a_k^2 / (2(k+1)).

Then ``X = f X_F`` kills ``a_{k-1}`` when
``X_F^2 f = (X_F f)^2 / (2f) + s f`` with ``s = a'_{k-1} / c_k`` and
``c_k = k(k+1)(k+2)/12``, and the compensating ``V -> g2 V`` with
``X_F(g2) = -(k/2) (X_F f / f) g2`` keeps ``a_k`` at zero.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Mapping

from sympy.polys.domains import QQ

from src.config import settings
from src.errors import InternalConsistencyError
from src.fields import Chart, FrameSolver, VField, ad_sequence
from src.jets import Jet, Rational
from src.normalize.flow import solve_directional_scale, solve_flow_system
from src.normalize.models import (
    AdExpansion,
    NormalizationGauge,
    ReferenceFrame,
    WunschmannResult,
)

logger = logging.getLogger(__name__)


# ── Raw pair ──


def ode_field(rhs: Jet, chart: Chart, k: int) -> VField:
    """Total derivative ``X_F = d/dt + x1 d/dx0 + ... + xk d/dx_{k-1} + F d/dxk``."""
    order = rhs.order
    comps: dict[str, Jet] = {"t": Jet.constant(chart.space, 1, order)}
    for i in range(k):
        comps[f"x{i}"] = chart.coordinate(f"x{i + 1}", order)
    comps[f"x{k}"] = rhs
    return VField.from_mapping(chart, comps, order)


def vertical_field(chart: Chart, k: int, order: int) -> VField:
    """The field ``d/dx_k`` spanning the vertical direction of the pair."""
    return VField.coordinate(chart, f"x{k}", order)


def ad_expansion(x: VField, v: VField, k: int) -> AdExpansion:
    """Coefficients of ``ad_X^{k+1} V`` in the frame ``(X, V, ..., ad_X^k V)``.

    Raises:
        DegenerateFrameError: the pair is not regular at the expansion point
        InsufficientOrderError: fewer than k+1 orders available
    """
    powers = ad_sequence(x, v, k + 1)
    solver = FrameSolver([x, *powers[: k + 1]])
    coefficients = solver.expand(powers[k + 1])
    return AdExpansion(k=k, a=coefficients[1:], a_x=coefficients[0], powers=powers)


# ── Normalization ──


def _start(chart: Chart, value: Rational, transverse: Jet | None, order: int) -> Jet:
    start = Jet.constant(chart.space, value, order)
    if transverse is None:
        return start
    if chart.constant_term(transverse):
        raise ValueError("transverse gauge must vanish at the expansion point")
    return start + transverse


def normalize_pair(
    x_f: VField,
    v0: VField,
    k: int,
    gauge: NormalizationGauge | None = None,
    verify_depth: int | None = None,
) -> ReferenceFrame:
    """Rescale ``(X_F, V0)`` so that ``a_k = a_{k-1} = 0``.

    Args:
        x_f: The total derivative field; its d/dt component must be 1
        v0: The vertical field d/dx_k
        k: Order parameter of the equation
        gauge: Free data of the rescalings; canonical when omitted
        verify_depth: Series order of the re-verification; defaults to the
            configured ``verify_depth``

    Raises:
        DegenerateFrameError: the pair is not regular at the point
        InsufficientOrderError: the order budget is exhausted
        InternalConsistencyError: the rescaled pair does not satisfy the
            normalization
    """
    gauge = gauge or NormalizationGauge()
    chart = x_f.chart
    raw = ad_expansion(x_f, v0, k)
    a_k, a_km1 = raw.a[k], raw.a[k - 1]

    g1 = solve_directional_scale(
        x_f, a_k.scale(QQ(-1, k + 1)), gauge.g_value, gauge.g_transverse, a_k.order + 1
    )
    shifted = a_km1 - x_f.apply(a_k).scale(QQ(k, 2)) + (a_k * a_k).scale(QQ(k, 2 * (k + 1)))
    s = shifted.scale(QQ(12, k * (k + 1) * (k + 2)))

    order = s.order + 1
    f0 = _start(chart, gauge.f_value, gauge.f_transverse, order)
    p0 = _start(chart, gauge.df_value, gauge.df_transverse, order)

    def projective(ys: list[Jet]) -> list[Jet]:
        f, p = ys
        return [p, (p * p * f.inverse()).scale(QQ(1, 2)) + s * f]

    f, p = solve_flow_system(x_f, projective, [f0, p0], order)
    g2 = solve_directional_scale(
        x_f, (p / f).scale(QQ(-k, 2)), 1, gauge.g2_transverse, order + 1
    )
    g = g1 * g2
    x = x_f * f
    v = v0 * g
    logger.debug("normalized pair valid to order %d", min(x.order, v.order))

    depth = settings.verify_depth if verify_depth is None else verify_depth
    cut = min(x.order, v.order, k + 1 + depth)
    expansion = ad_expansion(x.truncate(cut), v.truncate(cut), k)
    for i in (k, k - 1):
        if not expansion.a[i].is_zero():
            raise InternalConsistencyError(
                f"normalized pair has a_{i} = {expansion.a[i]}", identity="projective-normal"
            )
    return ReferenceFrame(chart=chart, k=k, x=x, v=v, f=f, g=g, expansion=expansion)


def wunschmann_residuals(ref: ReferenceFrame) -> WunschmannResult:
    """Residuals ``a_0 .. a_{k-2}`` and whether they vanish at the point."""
    residuals = ref.residuals
    constant_terms = [ref.chart.constant_term(a) for a in residuals]
    return WunschmannResult(
        residuals=residuals,
        constant_terms=constant_terms,
        holds=not any(constant_terms),
    )


# ── Gauges ──


def _random_rational(rng: random.Random, height: int, nonzero: bool = False) -> object:
    while True:
        value = QQ(rng.randint(-height, height), rng.randint(1, height))
        if value or not nonzero:
            return value


def random_transverse_gauge(
    chart: Chart,
    order: int,
    seed: int,
    free_data: bool = False,
    height: int = 3,
    degree: int = 2,
) -> NormalizationGauge:
    """A seeded random admissible gauge.

    Transverse jets are t-free polynomials of degree 1..``degree`` in the
    x variables. With ``free_data`` the values g(p), f(p) and (X_F f)(p) are
    randomized as well.
    """
    rng = random.Random(seed)
    names = [n for n in chart.names if n != "t"]

    def transverse() -> Jet:
        coefficients: dict[tuple[int, ...], object] = {}
        for _ in range(rng.randint(1, 3)):
            exponents = [0] * chart.dim
            for _ in range(rng.randint(1, degree)):
                exponents[chart.index(rng.choice(names))] += 1
            coefficients[tuple(exponents)] = _random_rational(rng, height, nonzero=True)
        return Jet.from_dict(chart.space, coefficients, order)

    values: Mapping[str, object] = {}
    if free_data:
        values = {
            "g_value": _random_rational(rng, height, nonzero=True),
            "f_value": _random_rational(rng, height, nonzero=True),
            "df_value": _random_rational(rng, height),
        }
    return NormalizationGauge(
        g_transverse=transverse(),
        f_transverse=transverse(),
        df_transverse=transverse(),
        g2_transverse=transverse(),
        **values,
    )
