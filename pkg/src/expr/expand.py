"""Taylor expansion of expressions at a rational point."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

from src.errors import ExpansionDomainError, NotInvertibleError
from src.expr.models import BinaryOperator, BinOp, Call, Expr, Neg, Num, Pow, Var
from src.jets import Jet, JetSpace, to_rational
from src.jets.series import ELEMENTARY


def expand_to_jet(
    ast: Expr,
    point: Mapping[str, Any],
    order: int,
    space: JetSpace | None = None,
) -> Jet:
    """Expand an expression into a jet at ``point``.

    Each variable ``v`` becomes ``point[v] + u_v`` with ``u_v`` the displacement
    jet of ``v``.

    Args:
        ast: Parsed expression
        point: Rational value of every variable of ``space``
        order: Validity order of the result
        space: Jet space to expand in; defaults to the series space of the
            point's variables in the given order

    Raises:
        ExpansionDomainError: a denominator vanishes at the point, a log/sqrt
            argument is out of domain, or a constant term would be irrational
    """
    if space is None:
        space = JetSpace.series(point)
    values = {name: to_rational(value) for name, value in point.items()}
    cache: dict[str, Jet] = {}

    def variable(name: str) -> Jet:
        if name not in cache:
            if name not in values:
                raise ExpansionDomainError(f"no value for variable {name} at the expansion point")
            cache[name] = Jet.constant(space, values[name], order) + Jet.variable(
                space, name, order
            )
        return cache[name]

    def invert(jet: Jet) -> Jet:
        try:
            return jet.inverse()
        except NotInvertibleError:
            raise ExpansionDomainError(
                "division by a jet with zero constant term at the expansion point"
            ) from None

    def walk(node: Expr) -> Jet:
        if isinstance(node, Num):
            return Jet.constant(space, node.value, order)
        if isinstance(node, Var):
            return variable(node.name)
        if isinstance(node, Neg):
            return -walk(node.operand)
        if isinstance(node, Pow):
            base = walk(node.base)
            if node.exponent < 0:
                base = invert(base)
            return base ** abs(node.exponent)
        if isinstance(node, Call):
            return ELEMENTARY[node.func](walk(node.arg))
        if isinstance(node, BinOp):
            left, right = walk(node.left), walk(node.right)
            if node.op is BinaryOperator.ADD:
                return left + right
            if node.op is BinaryOperator.SUB:
                return left - right
            if node.op is BinaryOperator.MUL:
                return left * right
            return left * invert(right)
        raise TypeError(f"not an expression node: {node!r}")

    return walk(ast)
