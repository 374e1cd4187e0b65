"""Exact sparse truncated jets.

A jet is a truncated multivariate Taylor expansion at a point with exact
rational coefficients and a tracked validity order. Variables come in two
kinds:

- SERIES variables are displacements from the expansion point. Their total
  degree is what the validity order bounds, and differentiating along them
  loses one order.
- LAURENT variables are exact coordinates carried with arbitrary integer
  exponents. They are never truncated and differentiating along them loses
  nothing. They hold the fiber coordinates F0 and G of the canonical bundle,
  on which every object of the construction depends through a single
  Laurent monomial per component.

Monomials are packed into one int: the lowest field holds the series degree,
the next fields hold biased exponents. Multiplying monomials is then one
integer addition and the degree of a term is a mask.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from enum import Enum
from typing import Any

from src.errors import InsufficientOrderError, JetSpaceMismatchError, NotInvertibleError
from src.jets.rationals import ONE, ZERO, Rational, format_rational, rational_power, to_rational

# ── Monomial packing ──

_WIDTH = 16
_MASK = (1 << _WIDTH) - 1
_BIAS = 1 << (_WIDTH - 1)


class VarKind(str, Enum):
    """How a jet variable is treated by truncation."""

    SERIES = "series"  # truncated displacement
    LAURENT = "laurent"  # exact, any integer exponent


class JetSpace:
    """Ordered jet variables and their kinds."""

    __slots__ = ("names", "kinds", "unit_key", "_steps", "_index")

    def __init__(self, names: Iterable[str], kinds: Iterable[VarKind | str] = ()) -> None:
        names = tuple(names)
        kinds = tuple(VarKind(k) for k in kinds) or (VarKind.SERIES,) * len(names)
        if len(kinds) != len(names):
            raise ValueError("one kind per variable required")
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be unique: {names}")
        self.names: tuple[str, ...] = names
        self.kinds: tuple[VarKind, ...] = kinds
        self.unit_key = sum(_BIAS << (_WIDTH * (i + 1)) for i in range(len(names)))
        self._steps = tuple(
            (1 << (_WIDTH * (i + 1))) + (1 if kind is VarKind.SERIES else 0)
            for i, kind in enumerate(kinds)
        )
        self._index = {name: i for i, name in enumerate(names)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JetSpace):
            return NotImplemented
        return self is other or (self.names == other.names and self.kinds == other.kinds)

    def __hash__(self) -> int:
        return hash((self.names, self.kinds))

    def __repr__(self) -> str:
        return f"JetSpace({', '.join(f'{n}:{k.value}' for n, k in zip(self.names, self.kinds))})"

    def __reduce__(self) -> tuple:
        return (JetSpace, (self.names, self.kinds))

    @classmethod
    def series(cls, names: Iterable[str]) -> JetSpace:
        names = tuple(names)
        return cls(names, (VarKind.SERIES,) * len(names))

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str | int) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.dim:
                raise IndexError(f"variable index {name} out of range for {self.dim} variables")
            return name
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown jet variable {name!r}") from None

    def is_series(self, i: int) -> bool:
        return self.kinds[i] is VarKind.SERIES

    @property
    def laurent_indices(self) -> tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.kinds) if k is VarKind.LAURENT)

    def pack(self, exponents: Sequence[int]) -> int:
        """Pack an exponent vector into a monomial key."""
        if len(exponents) != self.dim:
            raise JetSpaceMismatchError(
                f"exponent vector of length {len(exponents)} for {self.dim} variables"
            )
        key = self.unit_key
        degree = 0
        for i, e in enumerate(exponents):
            if self.kinds[i] is VarKind.SERIES:
                if e < 0:
                    raise ValueError(f"negative exponent on series variable {self.names[i]}")
                degree += e
            if not -_BIAS < e < _BIAS:
                raise ValueError(f"exponent {e} out of range")
            key += e << (_WIDTH * (i + 1))
        return key + degree

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple(
            ((key >> (_WIDTH * (i + 1))) & _MASK) - _BIAS for i in range(self.dim)
        )

    @staticmethod
    def degree(key: int) -> int:
        return key & _MASK

    def exponent(self, key: int, i: int) -> int:
        return ((key >> (_WIDTH * (i + 1))) & _MASK) - _BIAS

    def step(self, i: int) -> int:
        return self._steps[i]

    def monomial_text(self, key: int) -> str:
        factors = []
        for name, e in zip(self.names, self.unpack(key), strict=True):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        return "*".join(factors)


def _buckets(terms: Mapping[int, Rational], order: int) -> list[list[tuple[int, Rational]]]:
    buckets: list[list[tuple[int, Rational]]] = [[] for _ in range(order + 1)]
    for key, coeff in terms.items():
        degree = key & _MASK
        if degree <= order:
            buckets[degree].append((key, coeff))
    return buckets


# ── Jet ──


class Jet:
    """Truncated multivariate power series with exact rational coefficients.

    ``terms`` maps packed monomials to nonzero coefficients; no stored term
    has series degree above ``order``. Instances are treated as immutable.
    """

    __slots__ = ("space", "terms", "order")

    def __init__(self, space: JetSpace, terms: dict[int, Rational], order: int) -> None:
        self.space = space
        self.terms = terms
        self.order = order

    # ── Construction ──

    @classmethod
    def zero(cls, space: JetSpace, order: int) -> Jet:
        return cls(space, {}, _check_order(order))

    @classmethod
    def constant(cls, space: JetSpace, value: Any, order: int) -> Jet:
        value = to_rational(value)
        return cls(space, {space.unit_key: value} if value else {}, _check_order(order))

    @classmethod
    def variable(cls, space: JetSpace, name: str | int, order: int) -> Jet:
        """The coordinate jet of a variable (its displacement for SERIES variables)."""
        i = space.index(name)
        key = space.unit_key + space.step(i)
        return cls(space, {key: ONE} if key & _MASK <= order else {}, _check_order(order))

    @classmethod
    def monomial(
        cls, space: JetSpace, exponents: Sequence[int], coeff: Any, order: int
    ) -> Jet:
        key = space.pack(exponents)
        coeff = to_rational(coeff)
        terms = {key: coeff} if coeff and key & _MASK <= order else {}
        return cls(space, terms, _check_order(order))

    @classmethod
    def from_dict(
        cls, space: JetSpace, coefficients: Mapping[Sequence[int], Any], order: int
    ) -> Jet:
        """Build from ``{exponent tuple: coefficient}``, dropping terms above ``order``."""
        terms: dict[int, Rational] = {}
        for exponents, coeff in coefficients.items():
            key = space.pack(tuple(exponents))
            value = to_rational(coeff)
            if key & _MASK > order:
                continue
            total = terms.get(key, ZERO) + value
            if total:
                terms[key] = total
            else:
                terms.pop(key, None)
        return cls(space, terms, _check_order(order))

    # ── Inspection ──

    def __bool__(self) -> bool:
        raise TypeError("truth value of a Jet is ambiguous; use is_zero()")

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, exponents: Sequence[int]) -> Rational:
        """Coefficient of a monomial.

        Raises:
            InsufficientOrderError: the monomial lies above the validity order
        """
        key = self.space.pack(tuple(exponents))
        if key & _MASK > self.order:
            raise InsufficientOrderError(
                f"coefficient of degree {key & _MASK} requested from a jet valid to order "
                f"{self.order}"
            )
        return self.terms.get(key, ZERO)

    def items(self) -> Iterator[tuple[tuple[int, ...], Rational]]:
        """Terms as (exponent tuple, coefficient), by degree then exponents."""
        unpack = self.space.unpack
        for key in sorted(self.terms, key=lambda k: (k & _MASK, unpack(k))):
            yield unpack(key), self.terms[key]

    def head(self) -> Jet:
        """Degree-0 part (a Laurent polynomial in the exact variables)."""
        return self.homogeneous_part(0)

    def homogeneous_part(self, degree: int) -> Jet:
        if degree > self.order:
            raise InsufficientOrderError(
                f"degree {degree} part requested from a jet valid to order {self.order}"
            )
        return Jet(
            self.space,
            {k: c for k, c in self.terms.items() if k & _MASK == degree},
            self.order,
        )

    def valuation(self) -> int | None:
        """Lowest series degree present, or None for the zero jet."""
        if not self.terms:
            return None
        return min(k & _MASK for k in self.terms)

    def is_unit(self) -> bool:
        """True when the degree-0 part is a single monomial."""
        count = 0
        for key in self.terms:
            if key & _MASK == 0:
                count += 1
                if count > 1:
                    return False
        return count == 1

    def is_constant(self) -> bool:
        """True when the jet is a rational constant (no variable dependence)."""
        return all(k == self.space.unit_key for k in self.terms)

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError("jet is not a rational constant")
        return self.terms.get(self.space.unit_key, ZERO)

    def constant_term(self, laurent_point: Mapping[int, Rational] | None = None) -> Rational:
        """Value at the expansion point.

        Args:
            laurent_point: Values of the LAURENT variables by index; required
                when the degree-0 part depends on them
        """
        return self.specialize(laurent_point or {}).terms.get(self.space.unit_key, ZERO)

    def specialize(self, laurent_point: Mapping[int, Rational]) -> Jet:
        """Evaluate LAURENT variables, leaving a jet in the series variables only."""
        space = self.space
        indices = space.laurent_indices
        if not indices:
            return self
        out: dict[int, Rational] = {}
        for key, coeff in self.terms.items():
            value = coeff
            new_key = key
            for i in indices:
                e = space.exponent(key, i)
                if e:
                    if i not in laurent_point:
                        raise ValueError(f"no value given for {space.names[i]}")
                    value = value * rational_power(to_rational(laurent_point[i]), e)
                    new_key -= e << (_WIDTH * (i + 1))
            total = out.get(new_key, ZERO) + value
            if total:
                out[new_key] = total
            else:
                out.pop(new_key, None)
        return Jet(space, out, self.order)

    # ── Truncation and embedding ──

    def truncate(self, order: int) -> Jet:
        """Drop terms above ``order`` and lower the validity order."""
        if order >= self.order:
            return self
        if order < 0:
            raise InsufficientOrderError(f"cannot truncate to negative order {order}")
        return Jet(self.space, {k: c for k, c in self.terms.items() if k & _MASK <= order}, order)

    def _terms_upto(self, order: int) -> dict[int, Rational]:
        if order >= self.order:
            return self.terms
        return {k: c for k, c in self.terms.items() if k & _MASK <= order}

    def embed(self, target: JetSpace, positions: Sequence[int]) -> Jet:
        """Re-express in a larger space; variable i goes to ``positions[i]``."""
        if len(positions) != self.space.dim:
            raise JetSpaceMismatchError("one target position per variable required")
        for i, j in enumerate(positions):
            if target.kinds[j] is not self.space.kinds[i]:
                raise JetSpaceMismatchError(
                    f"kind mismatch embedding {self.space.names[i]} as {target.names[j]}"
                )
        out = {}
        for key, coeff in self.terms.items():
            new_key = target.unit_key + (key & _MASK)
            for i, j in enumerate(positions):
                new_key += self.space.exponent(key, i) << (_WIDTH * (j + 1))
            out[new_key] = coeff
        return Jet(target, out, self.order)

    # ── Arithmetic ──

    def _coerce(self, other: Any) -> Jet:
        if isinstance(other, Jet):
            if other.space is not self.space and other.space != self.space:
                raise JetSpaceMismatchError(
                    f"jets over {self.space.names} and {other.space.names}"
                )
            return other
        return Jet.constant(self.space, other, self.order)

    def __add__(self, other: Any) -> Jet:
        other = self._coerce(other)
        order = min(self.order, other.order)
        out = dict(self._terms_upto(order))
        for key, coeff in other._terms_upto(order).items():
            total = out.get(key)
            if total is None:
                out[key] = coeff
            else:
                total = total + coeff
                if total:
                    out[key] = total
                else:
                    del out[key]
        return Jet(self.space, out, order)

    __radd__ = __add__

    def __neg__(self) -> Jet:
        return Jet(self.space, {k: -c for k, c in self.terms.items()}, self.order)

    def __sub__(self, other: Any) -> Jet:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> Jet:
        return self._coerce(other) - self

    def scale(self, value: Any) -> Jet:
        value = to_rational(value)
        if not value:
            return Jet(self.space, {}, self.order)
        return Jet(self.space, {k: c * value for k, c in self.terms.items()}, self.order)

    def __mul__(self, other: Any) -> Jet:
        if not isinstance(other, Jet):
            return self.scale(other)
        other = self._coerce(other)
        order = min(self.order, other.order)
        out: dict[int, Rational] = {}
        _accumulate_product(out, self.terms, other.terms, order, self.space.unit_key)
        return Jet(self.space, {k: c for k, c in out.items() if c}, order)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> Jet:
        if isinstance(other, Jet):
            return self * self._coerce(other).inverse()
        value = to_rational(other)
        if not value:
            raise NotInvertibleError("division by zero")
        return self.scale(ONE / value)

    def __rtruediv__(self, other: Any) -> Jet:
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> Jet:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Jet.constant(self.space, 1, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def inverse(self) -> Jet:
        """Multiplicative inverse.

        The degree-0 part must be a single monomial m; then
        1/a = m^-1 * 1/(1 + r) with r of positive degree, expanded degree by
        degree.

        Raises:
            NotInvertibleError: the jet is not a unit at the expansion point
        """
        space = self.space
        unit = space.unit_key
        head = [(k, c) for k, c in self.terms.items() if k & _MASK == 0]
        if len(head) != 1:
            raise NotInvertibleError("jet not invertible at point")
        head_key, head_coeff = head[0]
        inv_coeff = ONE / head_coeff
        shift = unit - head_key
        rest = {k + shift: c * inv_coeff for k, c in self.terms.items() if k != head_key}
        order = self.order
        rest_parts = _buckets(rest, order)
        parts: list[list[tuple[int, Rational]]] = [[(unit, ONE)]]
        for degree in range(1, order + 1):
            acc: dict[int, Rational] = {}
            for j in range(1, degree + 1):
                lhs = rest_parts[j]
                rhs = parts[degree - j]
                if not lhs or not rhs:
                    continue
                for ka, ca in lhs:
                    base = ka - unit
                    for kb, cb in rhs:
                        key = base + kb
                        acc[key] = acc.get(key, ZERO) - ca * cb
            parts.append([(k, c) for k, c in acc.items() if c])
        out = {}
        for part in parts:
            for key, coeff in part:
                out[key + shift] = coeff * inv_coeff
        return Jet(space, out, order)

    # ── Calculus ──

    def partial(self, var: str | int) -> Jet:
        """Formal partial derivative.

        Series variables lose one order; Laurent variables lose none.

        Raises:
            InsufficientOrderError: differentiating a series direction at order 0
        """
        space = self.space
        i = space.index(var)
        if space.is_series(i):
            if self.order == 0:
                raise InsufficientOrderError("insufficient jet order")
            order = self.order - 1
        else:
            order = self.order
        shift = _WIDTH * (i + 1)
        step = space.step(i)
        out = {}
        for key, coeff in self.terms.items():
            e = ((key >> shift) & _MASK) - _BIAS
            if e:
                out[key - step] = coeff * e
        return Jet(space, out, order)

    def partial_order(self, var: int) -> int:
        """Validity order of ``partial(var)`` without computing it."""
        return self.order - 1 if self.space.is_series(var) else self.order

    # ── Comparison and display ──

    def __eq__(self, other: object) -> bool:
        """Equality of coefficients up to the smaller validity order."""
        if not isinstance(other, Jet):
            try:
                other = Jet.constant(self.space, other, self.order)
            except (TypeError, ValueError):
                return NotImplemented
        if other.space != self.space:
            return False
        order = min(self.order, other.order)
        return self._terms_upto(order) == other._terms_upto(order)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Jet({self}, order={self.order})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exponents, coeff in self.items():
            monomial = self.space.monomial_text(self.space.pack(exponents))
            text = format_rational(coeff)
            if not monomial:
                parts.append(text)
            elif text == "1":
                parts.append(monomial)
            elif text == "-1":
                parts.append(f"-{monomial}")
            else:
                parts.append(f"{text}*{monomial}")
        return " + ".join(parts).replace("+ -", "- ")


def _check_order(order: int) -> int:
    if order < 0:
        raise InsufficientOrderError(f"negative validity order {order}")
    return order


def _accumulate_product(
    out: dict[int, Rational],
    lhs_terms: Mapping[int, Rational],
    rhs_terms: Mapping[int, Rational],
    order: int,
    unit: int,
) -> None:
    """Add ``lhs * rhs`` truncated at ``order`` into ``out``."""
    if not lhs_terms or not rhs_terms:
        return
    lhs = _buckets(lhs_terms, order)
    rhs = _buckets(rhs_terms, order)
    get = out.get
    for da, ta in enumerate(lhs):
        if not ta:
            continue
        for db in range(order - da + 1):
            tb = rhs[db]
            if not tb:
                continue
            for ka, ca in ta:
                base = ka - unit
                for kb, cb in tb:
                    key = base + kb
                    out[key] = get(key, ZERO) + ca * cb


def jet_dot(space: JetSpace, pairs: Iterable[tuple[Jet, Jet]], order: int | None = None) -> Jet:
    """Sum of products ``sum(a * b)`` accumulated in one pass.

    Args:
        space: Space of all operands
        pairs: (a, b) factors
        order: Optional cap on the result order
    """
    pairs = list(pairs)
    out: dict[int, Rational] = {}
    result_order = order
    unit = space.unit_key
    for a, b in pairs:
        pair_order = min(a.order, b.order)
        result_order = pair_order if result_order is None else min(result_order, pair_order)
    if result_order is None:
        raise ValueError("jet_dot needs at least one pair or an explicit order")
    for a, b in pairs:
        _accumulate_product(out, a.terms, b.terms, result_order, unit)
    return Jet(space, {k: c for k, c in out.items() if c}, result_order)
