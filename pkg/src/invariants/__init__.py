"""Structure functions, classification verdicts and the model coframe."""

from src.invariants.model import model_coframe
from src.invariants.models import (
    DerivedFlag,
    EquationTypeVerdict,
    FlatnessEvidence,
    FlatnessStatus,
    FlatnessVerdict,
    HomogeneityReport,
    ModelCoframe,
    StructureTable,
    TorsionTable,
)
from src.invariants.tables import structure_table, torsion_table, w_functions
from src.invariants.verdicts import (
    bf1_exact_check,
    derived_flag_ranks,
    equation_type_test,
    flatness_verdict,
    point_flatness,
    w_homogeneity_check,
)

__all__ = [
    "DerivedFlag",
    "EquationTypeVerdict",
    "FlatnessEvidence",
    "FlatnessStatus",
    "FlatnessVerdict",
    "HomogeneityReport",
    "ModelCoframe",
    "StructureTable",
    "TorsionTable",
    "bf1_exact_check",
    "derived_flag_ranks",
    "equation_type_test",
    "flatness_verdict",
    "model_coframe",
    "point_flatness",
    "structure_table",
    "torsion_table",
    "w_functions",
    "w_homogeneity_check",
]
