"""Elementary functions of jets by series composition.

Each function splits off the constant term ``c`` of its argument and composes
a univariate Taylor series with the positive-degree remainder ``r``. Only
constants that keep the result rational are accepted: ``exp``, ``sin`` and
``cos`` need ``c = 0``, ``log`` needs ``c = 1`` and ``sqrt`` needs ``c`` to be
the square of a positive rational.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

from src.errors import ExpansionDomainError
from src.jets.jet import Jet
from src.jets.rationals import ONE, ZERO, Rational, denominator, numerator, to_rational


def _split(a: Jet, name: str) -> tuple[Rational, Jet]:
    if not a.head().is_constant():
        raise ExpansionDomainError(f"{name} of a jet whose constant term is not a number")
    c = a.terms.get(a.space.unit_key, ZERO)
    return c, a - Jet.constant(a.space, c, a.order)


def compose(coefficients: Sequence[Rational], r: Jet) -> Jet:
    """Evaluate ``sum(coefficients[j] * r**j)`` by Horner's rule.

    ``r`` must have no degree-0 part, so coefficients past ``r.order`` are
    irrelevant.
    """
    terms = list(coefficients[: r.order + 1])
    result = Jet.constant(r.space, terms[-1] if terms else 0, r.order)
    for coeff in reversed(terms[:-1]):
        result = result * r + coeff
    return result


def exp_coefficients(n: int) -> list[Rational]:
    coeffs = [ONE]
    for j in range(1, n + 1):
        coeffs.append(coeffs[-1] / j)
    return coeffs


def exp(a: Jet) -> Jet:
    c, r = _split(a, "exp")
    if c:
        raise ExpansionDomainError("exp of a nonzero rational constant is irrational")
    return compose(exp_coefficients(a.order), r)


def log(a: Jet) -> Jet:
    c, r = _split(a, "log")
    if c <= 0:
        raise ExpansionDomainError("log argument is not positive at the expansion point")
    if c != 1:
        raise ExpansionDomainError("log of a rational constant other than 1 is irrational")
    coeffs = [ZERO] + [to_rational(1 if j % 2 else -1) / j for j in range(1, a.order + 1)]
    return compose(coeffs, r)


def sin(a: Jet) -> Jet:
    c, r = _split(a, "sin")
    if c:
        raise ExpansionDomainError("sin of a nonzero rational constant is irrational")
    factorial = exp_coefficients(a.order)
    coeffs = [
        ZERO if j % 2 == 0 else factorial[j] * (1 if j % 4 == 1 else -1)
        for j in range(a.order + 1)
    ]
    return compose(coeffs, r)


def cos(a: Jet) -> Jet:
    c, r = _split(a, "cos")
    if c:
        raise ExpansionDomainError("cos of a nonzero rational constant is irrational")
    factorial = exp_coefficients(a.order)
    coeffs = [
        ZERO if j % 2 else factorial[j] * (1 if j % 4 == 0 else -1)
        for j in range(a.order + 1)
    ]
    return compose(coeffs, r)


def _rational_sqrt(c: Rational) -> Rational | None:
    num, den = numerator(c), denominator(c)
    root_num, root_den = math.isqrt(num), math.isqrt(den)
    if root_num * root_num != num or root_den * root_den != den:
        return None
    return to_rational(root_num) / root_den


def sqrt(a: Jet) -> Jet:
    """Square root via the binomial series of ``sqrt(c) * (1 + r/c) ** (1/2)``."""
    c, r = _split(a, "sqrt")
    if c <= 0:
        raise ExpansionDomainError("sqrt argument is not positive at the expansion point")
    root = _rational_sqrt(c)
    if root is None:
        raise ExpansionDomainError("sqrt of a rational constant that is not a square")
    half = to_rational(1) / 2
    coeffs = [ONE]
    for j in range(1, a.order + 1):
        coeffs.append(coeffs[-1] * (half - (j - 1)) / j)
    return compose(coeffs, r / c) * root


ELEMENTARY = {"exp": exp, "log": log, "sin": sin, "cos": cos, "sqrt": sqrt}
