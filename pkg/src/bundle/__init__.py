"""The canonical bundle: charts, fundamental fields and the lifted projective field."""

from src.bundle.lift import (
    DEFAULT_FIBER_POINT,
    bundle_space,
    fundamental_fields,
    lift_X,
    make_bundle_chart,
)
from src.bundle.models import FIBER_NAMES, BundleChart, FundamentalFields

__all__ = [
    "DEFAULT_FIBER_POINT",
    "FIBER_NAMES",
    "BundleChart",
    "FundamentalFields",
    "bundle_space",
    "fundamental_fields",
    "lift_X",
    "make_bundle_chart",
]
