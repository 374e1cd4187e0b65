"""Tests for right-hand side parsing and expansion."""

from __future__ import annotations

import random

import pytest
from sympy.polys.domains import QQ

from src.errors import ExpansionDomainError, ExpressionSyntaxError
from src.expr import BinaryOperator, BinOp, Call, Neg, Num, Pow, Var, expand_to_jet, parse, to_text
from src.expr.models import variables
from src.jets import Jet, JetSpace

ORIGIN3 = {"t": 0, "x0": 0, "x1": 0, "x2": 0, "x3": 0}


def _random_expression(rng: random.Random, depth: int) -> str:
    if depth == 0:
        return rng.choice(["t", "x0", "x1", "2", "1/3"])
    left = _random_expression(rng, depth - 1)
    right = _random_expression(rng, depth - 1)
    choice = rng.randrange(4)
    if choice == 0:
        return f"({left}) + ({right})"
    if choice == 1:
        return f"({left}) * ({right})"
    if choice == 2:
        return f"-({left})^2"
    return f"exp(({left}) - ({right}) - ({left}) + ({right}))"


class TestParse:
    """Grammar, precedence and errors."""

    def test_sum_of_power_and_product(self) -> None:
        ast = parse("x1^2 + t*x0", 3)
        assert ast == BinOp(
            BinaryOperator.ADD,
            Pow(Var("x1"), 2),
            BinOp(BinaryOperator.MUL, Var("t"), Var("x0")),
        )

    def test_reciprocal(self) -> None:
        ast = parse("1/(1+t)", 3)
        assert ast == BinOp(
            BinaryOperator.DIV, Num(1), BinOp(BinaryOperator.ADD, Num(1), Var("t"))
        )

    def test_power_binds_tighter_than_minus(self) -> None:
        assert parse("-x0^2", 3) == Neg(Pow(Var("x0"), 2))

    def test_left_association(self) -> None:
        assert parse("t - x0 - x1", 3) == BinOp(
            BinaryOperator.SUB,
            BinOp(BinaryOperator.SUB, Var("t"), Var("x0")),
            Var("x1"),
        )

    def test_negative_exponent(self) -> None:
        assert parse("x0^-2", 3) == Pow(Var("x0"), -2)
        assert parse("x0^(-2)", 3) == Pow(Var("x0"), -2)

    def test_functions(self) -> None:
        assert parse("sin(x1)", 3) == Call("sin", Var("x1"))
        assert variables(parse("exp(t) * log(1 + x2)", 3)) == {"t", "x2"}

    def test_variable_index_exceeds_k(self) -> None:
        with pytest.raises(ExpressionSyntaxError, match="variable index exceeds k") as info:
            parse("x4", 3)
        assert info.value.position == 0

    @pytest.mark.parametrize(
        ("text", "position"),
        [("x0 +", 4), ("2 * * t", 4), ("x0^t", 3), ("y", 0), ("t $ 1", 2), ("(t", 2)],
    )
    def test_syntax_errors_carry_position(self, text: str, position: int) -> None:
        with pytest.raises(ExpressionSyntaxError) as info:
            parse(text, 3)
        assert info.value.position == position

    def test_exponent_bound(self) -> None:
        with pytest.raises(ExpressionSyntaxError, match="exceeds the limit 256") as info:
            parse("x0^1000000000", 3)
        assert info.value.position == 3
        with pytest.raises(ExpressionSyntaxError, match="exceeds the limit 4"):
            parse("t*x0^(-5)", 3, max_exponent=4)
        assert parse("x0^-300", 3, max_exponent=300) == Pow(Var("x0"), -300)

    @pytest.mark.parametrize("text", ["(" * 5000 + "x0" + ")" * 5000, "-" * 5000 + "x0"])
    def test_deep_nesting_is_a_syntax_error(self, text: str) -> None:
        with pytest.raises(ExpressionSyntaxError, match="nested too deeply"):
            parse(text, 3)

    def test_empty(self) -> None:
        with pytest.raises(ExpressionSyntaxError, match="empty"):
            parse("  ", 3)

    def test_print_round_trip(self) -> None:
        rng = random.Random(7)
        texts = ["x1^2 + t*x0", "1/(1+t)", "-x0^2", "t - (x0 - x1)", "2/3*x0^-1", "-(t + 1)^3"]
        texts += [_random_expression(rng, 3) for _ in range(30)]
        for text in texts:
            ast = parse(text, 3)
            assert parse(to_text(ast), 3) == ast


class TestExpand:
    """Taylor expansion at rational points."""

    def test_monomial(self) -> None:
        jet = expand_to_jet(parse("t^2", 3), ORIGIN3, 4)
        assert len(jet) == 1
        assert jet.coefficient((2, 0, 0, 0, 0)) == 1

    def test_geometric_series(self) -> None:
        jet = expand_to_jet(parse("1/(1+t)", 3), ORIGIN3, 3)
        expected = Jet.from_dict(jet.space, {(i, 0, 0, 0, 0): (-1) ** i for i in range(4)}, 3)
        assert jet == expected

    def test_exp(self) -> None:
        jet = expand_to_jet(parse("exp(x0)", 3), ORIGIN3, 3)
        expected = Jet.from_dict(
            jet.space,
            {
                (0, 0, 0, 0, 0): 1,
                (0, 1, 0, 0, 0): 1,
                (0, 2, 0, 0, 0): QQ(1, 2),
                (0, 3, 0, 0, 0): QQ(1, 6),
            },
            3,
        )
        assert jet == expected

    def test_point_shift(self) -> None:
        point = {**ORIGIN3, "x0": QQ(1, 2)}
        jet = expand_to_jet(parse("x0^2", 3), point, 2)
        assert jet.constant_term() == QQ(1, 4)
        assert jet.coefficient((0, 1, 0, 0, 0)) == 1
        assert jet.coefficient((0, 2, 0, 0, 0)) == 1

    def test_exp_of_negative_is_inverse(self) -> None:
        product = expand_to_jet(parse("exp(x0 - t) * exp(t - x0)", 3), ORIGIN3, 6)
        assert product == Jet.constant(product.space, 1, 6)

    def test_homomorphism(self) -> None:
        rng = random.Random(11)
        for _ in range(30):
            a = _random_expression(rng, 2)
            b = _random_expression(rng, 2)
            ja = expand_to_jet(parse(a, 3), ORIGIN3, 4)
            jb = expand_to_jet(parse(b, 3), ORIGIN3, 4)
            assert expand_to_jet(parse(f"({a}) * ({b})", 3), ORIGIN3, 4) == ja * jb
            assert expand_to_jet(parse(f"({a}) + ({b})", 3), ORIGIN3, 4) == ja + jb

    def test_sqrt_and_log(self) -> None:
        point = {**ORIGIN3, "x1": QQ(4)}
        root = expand_to_jet(parse("sqrt(x1)", 3), point, 3)
        assert root * root == expand_to_jet(parse("x1", 3), point, 3)
        log = expand_to_jet(parse("log(1 + t)", 3), ORIGIN3, 3)
        assert log.coefficient((2, 0, 0, 0, 0)) == QQ(-1, 2)

    @pytest.mark.parametrize(
        "text",
        ["1/x0", "x0^-1", "log(x0)", "log(2 + t)", "sqrt(2 + t)", "sin(1 + t)", "exp(1 + t)"],
    )
    def test_domain_errors(self, text: str) -> None:
        with pytest.raises(ExpansionDomainError):
            expand_to_jet(parse(text, 3), ORIGIN3, 3)

    def test_explicit_space(self) -> None:
        space = JetSpace.series(["t", "x0", "x1", "x2", "x3"])
        jet = expand_to_jet(parse("t*x3", 3), ORIGIN3, 3, space=space)
        assert jet.space == space
        assert jet.coefficient((1, 0, 0, 0, 1)) == 1
