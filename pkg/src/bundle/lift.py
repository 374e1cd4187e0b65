"""Lifting the reference pair to the canonical bundle.

On the bundle chart the lift of the projective field is

    BX = X/F0 - 2 (F1/F0) BF0 - (F1/F0)^2 BF1 - k (F1/F0) BG

so its fiber components are ``-2 F1``, ``-F1^2/F0`` and ``-k F1 G/F0``.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Any

from src.bundle.models import FIBER_NAMES, BundleChart, FundamentalFields
from src.errors import InputError
from src.fields import Chart, VField
from src.jets import Jet, JetSpace, VarKind, to_rational
from src.normalize import ReferenceFrame

logger = logging.getLogger(__name__)

DEFAULT_FIBER_POINT = (1, 0, 1)


def bundle_space(base: JetSpace) -> JetSpace:
    """Base variables followed by F0 (exact), F1 (series) and G (exact)."""
    return JetSpace(
        (*base.names, *FIBER_NAMES),
        (*base.kinds, VarKind.LAURENT, VarKind.SERIES, VarKind.LAURENT),
    )


def _lift(field: VField, chart: Chart) -> VField:
    positions = range(field.chart.dim)
    comps = [c.embed(chart.space, positions) for c in field.components]
    order = field.order
    comps += [Jet.zero(chart.space, order)] * len(FIBER_NAMES)
    return VField(chart, comps)


def fundamental_fields(chart: Chart, order: int) -> FundamentalFields:
    """The fields generating the structure group action on the fibers."""
    f0 = chart.coordinate("F0", order)
    g = chart.coordinate("G", order)
    return FundamentalFields(
        bg=VField.from_mapping(chart, {"G": g}, order),
        bf0=VField.from_mapping(chart, {"F0": f0}, order),
        bf1=VField.from_mapping(chart, {"F1": f0}, order),
    )


def make_bundle_chart(
    ref: ReferenceFrame, fiber_point: Sequence[Any] = DEFAULT_FIBER_POINT
) -> BundleChart:
    """Chart on the canonical bundle at ``(base point, F0, F1, G)``.

    Raises:
        InputError: F0 or G vanishes at the point
    """
    f0, f1, g = (to_rational(v) for v in fiber_point)
    if not f0:
        raise InputError("point outside the structure group orbit: F0 = 0")
    if not g:
        raise InputError("point outside the structure group orbit: G = 0")
    base = ref.chart
    chart = Chart(bundle_space(base.space), (*base.point, f0, f1, g))
    order = ref.order
    logger.debug("bundle chart at F0=%s F1=%s G=%s, order %d", f0, f1, g, order)
    return BundleChart(
        chart=chart,
        k=ref.k,
        reference=ref,
        x=_lift(ref.x, chart),
        v=_lift(ref.v, chart),
        fundamentals=fundamental_fields(chart, order),
        order=order,
    )


def lift_X(bundle: BundleChart) -> VField:  # noqa: N802
    """The lifted projective field ``BX`` on the bundle chart."""
    chart = bundle.chart
    order = bundle.order
    space = chart.space
    exponents = [0] * chart.dim
    exponents[chart.index("F0")] = -1
    inv_f0 = Jet.monomial(space, exponents, 1, order)
    f1 = chart.coordinate("F1", order)
    g = chart.coordinate("G", order)
    comps = list((bundle.x * inv_f0).components)
    comps[chart.index("F0")] = f1.scale(-2)
    comps[chart.index("F1")] = -(f1 * f1 * inv_f0)
    comps[chart.index("G")] = (f1 * g * inv_f0).scale(-bundle.k)
    return VField(chart, comps)
