"""The unique adapted frame on the canonical bundle."""

from src.frame.coefficients import adapted_coefficients, coefficient_table
from src.frame.models import (
    CanonicalFrame,
    NormalizationConstants,
    Residual,
    ResidualKind,
    ResidualReport,
    TorsionFunctionals,
    UniquenessReport,
    bv_index,
)
from src.frame.solver import normalization_constants, solve_normalization, uniqueness_probe
from src.frame.structural import bf1_coefficient, bf1_residual, exact_residual, verify_structural
from src.frame.torsion import adapted_sequence, frame_solver, torsion_functionals, zero_ansatz

__all__ = [
    "CanonicalFrame",
    "NormalizationConstants",
    "Residual",
    "ResidualKind",
    "ResidualReport",
    "TorsionFunctionals",
    "UniquenessReport",
    "adapted_coefficients",
    "adapted_sequence",
    "bf1_coefficient",
    "bf1_residual",
    "bv_index",
    "coefficient_table",
    "exact_residual",
    "frame_solver",
    "normalization_constants",
    "solve_normalization",
    "torsion_functionals",
    "uniqueness_probe",
    "verify_structural",
    "zero_ansatz",
]
