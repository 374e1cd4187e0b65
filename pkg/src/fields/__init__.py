"""Vector fields over charts: Lie calculus, frame expansion and regularity."""

from src.fields.calculus import ad_power, ad_sequence, lie_bracket
from src.fields.linalg import FrameSolver, combine, constant_rank, fields_rank, frame_expand
from src.fields.models import Chart, VField
from src.fields.regularity import RegularityProfile, regularity_check

__all__ = [
    "Chart",
    "FrameSolver",
    "RegularityProfile",
    "VField",
    "ad_power",
    "ad_sequence",
    "combine",
    "constant_rank",
    "fields_rank",
    "frame_expand",
    "lie_bracket",
    "regularity_check",
]
