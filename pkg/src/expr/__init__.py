"""Right-hand side expressions: parsing, printing and expansion to jets."""

from src.expr.expand import expand_to_jet
from src.expr.models import BinaryOperator, BinOp, Call, Expr, Neg, Num, Pow, Var, to_text
from src.expr.parser import parse

__all__ = [
    "BinaryOperator",
    "BinOp",
    "Call",
    "Expr",
    "Neg",
    "Num",
    "Pow",
    "Var",
    "expand_to_jet",
    "parse",
    "to_text",
]
