"""Problem specifications, the analysis runner and its reports."""

from src.pipeline.models import (
    DEFAULT_FIBER,
    REPORT_SCHEMA,
    CompareReport,
    InvariantReport,
    NormalizationEvidence,
    PointEvidence,
    ProblemSpec,
    VerificationReport,
    WunschmannEvidence,
    default_order,
)
from src.pipeline.runner import (
    INVARIANT_VERDICTS,
    analyze_point,
    build_frame,
    compare,
    flatness_test,
    frame_from_pair,
    point_flatness_evidence,
    reference_pair,
    run_analysis,
    run_verification,
    verification_suites,
)
from src.pipeline.sampling import (
    check_admissible,
    default_base_point,
    draw_admissible,
    draw_point,
    format_point,
    primary_point,
    sample_points,
)

__all__ = [
    "DEFAULT_FIBER",
    "INVARIANT_VERDICTS",
    "REPORT_SCHEMA",
    "CompareReport",
    "InvariantReport",
    "NormalizationEvidence",
    "PointEvidence",
    "ProblemSpec",
    "VerificationReport",
    "WunschmannEvidence",
    "analyze_point",
    "build_frame",
    "check_admissible",
    "compare",
    "default_base_point",
    "default_order",
    "draw_admissible",
    "draw_point",
    "flatness_test",
    "format_point",
    "frame_from_pair",
    "point_flatness_evidence",
    "primary_point",
    "reference_pair",
    "run_analysis",
    "run_verification",
    "sample_points",
    "verification_suites",
]
