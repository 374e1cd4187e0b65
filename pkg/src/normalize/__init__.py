"""Normalization of the reference pair and the Wünschmann residuals."""

from src.normalize.flow import solve_directional_scale, solve_flow_system
from src.normalize.models import (
    AdExpansion,
    NormalizationGauge,
    ReferenceFrame,
    WunschmannResult,
)
from src.normalize.normalizer import (
    ad_expansion,
    normalize_pair,
    ode_field,
    random_transverse_gauge,
    vertical_field,
    wunschmann_residuals,
)

__all__ = [
    "AdExpansion",
    "NormalizationGauge",
    "ReferenceFrame",
    "WunschmannResult",
    "ad_expansion",
    "normalize_pair",
    "ode_field",
    "random_transverse_gauge",
    "solve_directional_scale",
    "solve_flow_system",
    "vertical_field",
    "wunschmann_residuals",
]
