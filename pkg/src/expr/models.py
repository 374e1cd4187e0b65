"""Expression tree for right-hand sides ``F(t, x0, ..., xk)``.

Nodes are frozen dataclasses, so structurally identical trees compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class BinaryOperator(str, Enum):
    """Binary operators with their precedence."""

    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"

    @property
    def precedence(self) -> int:
        return 1 if self in (BinaryOperator.ADD, BinaryOperator.SUB) else 2


FUNCTIONS = ("exp", "log", "sin", "cos", "sqrt")

# Precedence levels, loosest to tightest
PREC_SUM = 1
PREC_PRODUCT = 2
PREC_UNARY = 3
PREC_POWER = 4
PREC_ATOM = 5


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str

    @property
    def index(self) -> int | None:
        """Derivative index for ``x<i>``; None for ``t``."""
        return None if self.name == "t" else int(self.name[1:])


@dataclass(frozen=True)
class BinOp:
    op: BinaryOperator
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg:
    operand: Expr


@dataclass(frozen=True)
class Pow:
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: Expr


Expr = Num | Var | BinOp | Neg | Pow | Call


def precedence(node: Expr) -> int:
    if isinstance(node, BinOp):
        return node.op.precedence
    if isinstance(node, Neg):
        return PREC_UNARY
    if isinstance(node, Pow):
        return PREC_POWER
    return PREC_ATOM


def to_text(node: Expr) -> str:
    """Print an expression so that parsing the text gives the same tree."""
    return _print(node, 0)


def _print(node: Expr, required: int) -> str:
    if isinstance(node, Num):
        text = str(node.value)
    elif isinstance(node, Var):
        text = node.name
    elif isinstance(node, Call):
        text = f"{node.func}({_print(node.arg, 0)})"
    elif isinstance(node, Neg):
        text = "-" + _print(node.operand, PREC_UNARY)
    elif isinstance(node, Pow):
        text = f"{_print(node.base, PREC_POWER)}^{node.exponent}"
    else:
        p = node.op.precedence
        # left association: an equal-precedence right operand needs parentheses
        text = f"{_print(node.left, p)} {node.op.value} {_print(node.right, p + 1)}"
    return f"({text})" if precedence(node) < required else text


def variables(node: Expr) -> set[str]:
    """Names of all variables referenced by an expression."""
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, BinOp):
        return variables(node.left) | variables(node.right)
    if isinstance(node, (Neg,)):
        return variables(node.operand)
    if isinstance(node, Pow):
        return variables(node.base)
    if isinstance(node, Call):
        return variables(node.arg)
    return set()
