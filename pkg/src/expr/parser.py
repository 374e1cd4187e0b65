"""Recursive-descent parser for right-hand side expressions.

Grammar (``^`` binds tighter than unary minus, which binds tighter than
``* /``, which bind tighter than ``+ -``; binary operators associate left)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | power
    power    := atom ("^" exponent)*
    exponent := ["-"] INT | "(" ["-"] INT ")"
    atom     := INT | VAR | FUNC "(" expr ")" | "(" expr ")"

``VAR`` is ``t`` or ``x<i>`` with ``i <= k``; ``FUNC`` is one of exp, log,
sin, cos, sqrt.
Exponents are bounded by the configured ``max_exponent``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from src.config import settings
from src.errors import ExpressionSyntaxError
from src.expr.models import FUNCTIONS, BinaryOperator, BinOp, Call, Expr, Neg, Num, Pow, Var

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")
_XVAR = re.compile(r"x(0|[1-9]\d*)")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op" or "end"
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[offset]!r}", offset)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, k: int, max_exponent: int) -> None:
        self.tokens = tokenize(text)
        self.k = k
        self.max_exponent = max_exponent
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def accept(self, op: str) -> bool:
        if self.current.kind == "op" and self.current.text == op:
            self.pos += 1
            return True
        return False

    def expect(self, op: str) -> None:
        if not self.accept(op):
            raise ExpressionSyntaxError(f"expected {op!r}", self.current.position)

    def parse(self) -> Expr:
        node = self.expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(
                f"unexpected token {self.current.text!r}", self.current.position
            )
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = BinaryOperator(self.advance().text)
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = BinaryOperator(self.advance().text)
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        node = self.atom()
        while self.accept("^"):
            node = Pow(node, self.exponent())
        return node

    def exponent(self) -> int:
        parenthesized = self.accept("(")
        sign = -1 if self.accept("-") else 1
        token = self.current
        if token.kind != "int":
            raise ExpressionSyntaxError("exponent must be an integer literal", token.position)
        self.advance()
        value = int(token.text)
        if value > self.max_exponent:
            raise ExpressionSyntaxError(
                f"exponent {value} exceeds the limit {self.max_exponent}", token.position
            )
        if parenthesized:
            self.expect(")")
        return sign * value

    def atom(self) -> Expr:
        token = self.current
        if token.kind == "int":
            self.advance()
            return Num(int(token.text))
        if token.kind == "name":
            self.advance()
            if token.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(token.text, arg)
            return self.variable(token)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if token.kind == "end":
            raise ExpressionSyntaxError("unexpected end of expression", token.position)
        raise ExpressionSyntaxError(f"unexpected token {token.text!r}", token.position)

    def variable(self, token: Token) -> Var:
        if token.text == "t":
            return Var("t")
        match = _XVAR.fullmatch(token.text)
        if not match:
            raise ExpressionSyntaxError(f"unknown name {token.text!r}", token.position)
        if int(match.group(1)) > self.k:
            raise ExpressionSyntaxError("variable index exceeds k", token.position)
        return Var(token.text)


def parse(text: str, k: int, max_exponent: int | None = None) -> Expr:
    """Parse a right-hand side for the order-(k+1) equation.

    Args:
        text: Expression text
        k: Highest derivative index allowed in variables
        max_exponent: Bound on exponent magnitudes; the configured one when omitted

    Raises:
        ExpressionSyntaxError: malformed input, a variable index above k, an
            exponent above the bound or nesting deeper than the interpreter allows
    """
    if not text or not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    bound = settings.max_exponent if max_exponent is None else max_exponent
    parser = _Parser(text, k, bound)
    try:
        return parser.parse()
    except RecursionError:
        position = parser.current.position
        raise ExpressionSyntaxError("expression nested too deeply", position) from None
