"""Charts and vector fields with jet coefficients."""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from typing import Any

from src.errors import JetSpaceMismatchError
from src.jets import Jet, JetSpace, Rational, VarKind, format_rational, jet_dot, to_rational


class Chart:
    """Coordinates around an expansion point.

    ``point`` holds one rational per variable: the base point for SERIES
    variables and the evaluation value for LAURENT ones.
    """

    __slots__ = ("space", "point")

    def __init__(self, space: JetSpace, point: Sequence[Any]) -> None:
        if len(point) != space.dim:
            raise ValueError(f"point has {len(point)} values for {space.dim} chart variables")
        self.space = space
        self.point: tuple[Rational, ...] = tuple(to_rational(v) for v in point)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chart):
            return NotImplemented
        return self.space == other.space and self.point == other.point

    def __hash__(self) -> int:
        return hash((self.space, self.point))

    def __repr__(self) -> str:
        values = ", ".join(
            f"{n}={format_rational(v)}" for n, v in zip(self.space.names, self.point)
        )
        return f"Chart({values})"

    def __reduce__(self) -> tuple:
        return (Chart, (self.space, self.point))

    @classmethod
    def base(cls, k: int, point: Mapping[str, Any]) -> Chart:
        """Chart (t, x0, ..., xk) on the jet space of order-(k+1) equations."""
        names = ("t", *(f"x{i}" for i in range(k + 1)))
        missing = [n for n in names if n not in point]
        if missing:
            raise ValueError(f"base point misses {', '.join(missing)}")
        return cls(JetSpace.series(names), tuple(point[n] for n in names))

    @property
    def names(self) -> tuple[str, ...]:
        return self.space.names

    @property
    def dim(self) -> int:
        return self.space.dim

    def index(self, name: str | int) -> int:
        return self.space.index(name)

    def value(self, name: str | int) -> Rational:
        return self.point[self.index(name)]

    @property
    def laurent_point(self) -> dict[int, Rational]:
        return {i: self.point[i] for i in self.space.laurent_indices}

    def coordinate(self, name: str | int, order: int) -> Jet:
        """The coordinate function as a jet (point value plus displacement)."""
        i = self.index(name)
        if self.space.kinds[i] is VarKind.LAURENT:
            return Jet.variable(self.space, i, order)
        return Jet.constant(self.space, self.point[i], order) + Jet.variable(
            self.space, i, order
        )

    def constant_term(self, jet: Jet) -> Rational:
        return jet.constant_term(self.laurent_point)


class VField:
    """Vector field: one coefficient jet per chart variable."""

    __slots__ = ("chart", "components")

    def __init__(self, chart: Chart, components: Sequence[Jet]) -> None:
        if len(components) != chart.dim:
            raise JetSpaceMismatchError(
                f"{len(components)} components for a {chart.dim}-dimensional chart"
            )
        self.chart = chart
        self.components = tuple(components)

    @classmethod
    def zero(cls, chart: Chart, order: int) -> VField:
        return cls(chart, [Jet.zero(chart.space, order)] * chart.dim)

    @classmethod
    def coordinate(cls, chart: Chart, name: str | int, order: int) -> VField:
        """The coordinate field along one variable."""
        i = chart.index(name)
        comps = [Jet.zero(chart.space, order)] * chart.dim
        comps[i] = Jet.constant(chart.space, 1, order)
        return cls(chart, comps)

    @classmethod
    def from_mapping(cls, chart: Chart, components: Mapping[str, Jet], order: int) -> VField:
        comps = [Jet.zero(chart.space, order)] * chart.dim
        for name, jet in components.items():
            comps[chart.index(name)] = jet
        return cls(chart, comps)

    @property
    def order(self) -> int:
        return min(c.order for c in self.components)

    def __getitem__(self, name: str | int) -> Jet:
        return self.components[self.chart.index(name)]

    def __iter__(self) -> Iterator[Jet]:
        return iter(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _check(self, other: VField) -> None:
        if other.chart.space != self.chart.space:
            raise JetSpaceMismatchError("vector fields on different charts")

    def __add__(self, other: VField) -> VField:
        self._check(other)
        return VField(self.chart, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: VField) -> VField:
        self._check(other)
        return VField(self.chart, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> VField:
        return VField(self.chart, [-a for a in self.components])

    def __mul__(self, factor: Any) -> VField:
        """Multiply by a function (Jet) or a rational scalar."""
        if isinstance(factor, Jet):
            return VField(self.chart, [factor * a for a in self.components])
        return VField(self.chart, [a.scale(factor) for a in self.components])

    __rmul__ = __mul__

    def truncate(self, order: int) -> VField:
        return VField(self.chart, [a.truncate(order) for a in self.components])

    def apply(self, f: Jet) -> Jet:
        """Directional derivative ``X(f) = sum_j X^j * df/dx_j``.

        A component that vanishes to its validity order contributes nothing
        below that order, so it does not cost the order of ``df/dx_j``.
        """
        pairs = []
        order = None
        for j, coeff in enumerate(self.components):
            term_order = coeff.order
            if not coeff.is_zero():
                term_order = min(term_order, f.partial_order(j))
                pairs.append((coeff, f.partial(j)))
            order = term_order if order is None else min(order, term_order)
        return jet_dot(f.space, pairs, order)

    def constant_vector(self) -> tuple[Rational, ...]:
        """Component values at the expansion point."""
        return tuple(self.chart.constant_term(c) for c in self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VField):
            return NotImplemented
        return other.chart.space == self.chart.space and all(
            a == b for a, b in zip(self.components, other.components)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        parts = [
            f"({c})*d_{name}"
            for name, c in zip(self.chart.names, self.components)
            if not c.is_zero()
        ]
        return f"VField({' + '.join(parts) or '0'}, order={self.order})"
