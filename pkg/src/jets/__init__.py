"""Exact sparse truncated multivariate power series."""

from src.jets.jet import Jet, JetSpace, VarKind, jet_dot
from src.jets.rationals import Rational, format_rational, to_rational

__all__ = [
    "Jet",
    "JetSpace",
    "VarKind",
    "jet_dot",
    "Rational",
    "format_rational",
    "to_rational",
]
