"""Jet solutions of first-order systems along a vector field.

For ``X = d/dt + sum_j c_j d/dx_j`` and unknowns ``y`` the system
``X(y) = rhs(y)`` is solved degree by degree. At degree ``D`` the
degree-``D-1`` part of the equation reads

    dy_D/dt + sum_j c_j(p) dy_D/dx_j = [rhs(y) - sum_j (c_j - c_j(p)) dy/dx_j]_{D-1}

where the right side only involves ``y`` below degree ``D``. Sorting the
monomials of ``y_D`` by their power of ``t`` turns this into a triangular
recursion; the t-free monomials are free data (the transverse gauge).
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence

from src.errors import InsufficientOrderError, JetSpaceMismatchError
from src.fields.models import VField
from src.jets import Jet, JetSpace, Rational, jet_dot
from src.jets.rationals import ZERO

logger = logging.getLogger(__name__)

FlowRhs = Callable[[list[Jet]], Sequence[Jet]]


def _degree_terms(jet: Jet, degree: int) -> dict[int, Rational]:
    space = jet.space
    return {key: c for key, c in jet.terms.items() if space.degree(key) == degree}


def _check_field(x: VField) -> int:
    space = x.chart.space
    if space.laurent_indices:
        raise JetSpaceMismatchError("flow solver needs a chart of series variables only")
    t = x.chart.index("t")
    if not x.components[t].is_constant() or x.components[t].constant_value() != 1:
        raise ValueError("vector field has a non-unit d/dt component")
    return t


def solve_flow_system(
    x: VField, rhs: FlowRhs, initial: Sequence[Jet], order: int
) -> list[Jet]:
    """Solve ``X(y_m) = rhs(y)_m`` with prescribed t-free data.

    Args:
        x: Field with d/dt component exactly 1 on a chart containing ``t``
        rhs: Maps the current approximations to the right sides; its
            degree-``D-1`` part may only depend on ``y`` below degree ``D``
        initial: Per unknown, the t-free jet fixing the value at the point
            and the transverse gauge
        order: Validity order of the solutions

    Raises:
        ValueError: non-unit d/dt component or t-dependent initial data
        InsufficientOrderError: the right side is not valid to ``order - 1``
    """
    t = _check_field(x)
    space = x.chart.space
    step_t = space.step(t)
    for jet in initial:
        if any(space.exponent(key, t) for key in jet.terms):
            raise ValueError("initial data of a flow must not depend on t")
        if jet.order < order:
            raise InsufficientOrderError(
                f"initial data valid to order {jet.order}, need {order}"
            )

    drift: list[tuple[int, Rational, Jet]] = []
    for j, comp in enumerate(x.components):
        if j == t or comp.is_zero():
            continue
        value = comp.terms.get(space.unit_key, ZERO)
        rest = comp - Jet.constant(space, value, comp.order)
        drift.append((j, value, rest))
    if order > 0 and any(rest.order < order - 1 for _, _, rest in drift):
        raise InsufficientOrderError(
            f"vector field valid to order {x.order} cannot carry a flow to order {order}"
        )

    solution = [dict(_degree_terms(jet, 0)) for jet in initial]
    for degree in range(1, order + 1):
        current = [Jet(space, dict(terms), degree) for terms in solution]
        values = rhs(current)
        for m, value in enumerate(values):
            if value.order < degree - 1:
                raise InsufficientOrderError(
                    f"flow right side valid to order {value.order}, need {degree - 1}"
                )
            pairs = [
                (rest, current[m].partial(j)) for j, _, rest in drift if not rest.is_zero()
            ]
            correction = jet_dot(space, pairs, degree - 1) if pairs else None
            target = _degree_terms(value, degree - 1)
            if correction is not None:
                for key, c in _degree_terms(correction, degree - 1).items():
                    total = target.get(key, ZERO) - c
                    if total:
                        target[key] = total
                    else:
                        target.pop(key, None)
            seed = _degree_terms(initial[m], degree)
            solution[m].update(_solve_degree(space, t, step_t, drift, target, seed, degree))
    return [Jet(space, terms, order) for terms in solution]


def _solve_degree(
    space: JetSpace,
    t: int,
    step_t: int,
    drift: list[tuple[int, Rational, Jet]],
    target: dict[int, Rational],
    seed: dict[int, Rational],
    degree: int,
) -> dict[int, Rational]:
    """Degree-``degree`` part of one unknown, by increasing power of t."""
    out = dict(seed)
    # contributions of sum_j c_j(p) dy_D/dx_j, keyed by the degree-(D-1) monomial
    shifted: dict[int, Rational] = {}

    def push(key: int, coeff: Rational) -> None:
        for j, value, _ in drift:
            if not value:
                continue
            e = space.exponent(key, j)
            if e:
                target_key = key - space.step(j)
                total = shifted.get(target_key, ZERO) + value * coeff * e
                if total:
                    shifted[target_key] = total
                else:
                    shifted.pop(target_key, None)

    for key, coeff in seed.items():
        push(key, coeff)
    for power in range(1, degree + 1):
        keys = {k for k in target if space.exponent(k, t) == power - 1}
        keys.update(k for k in shifted if space.exponent(k, t) == power - 1)
        for key in sorted(keys):
            coeff = (target.get(key, ZERO) - shifted.get(key, ZERO)) / power
            if coeff:
                new_key = key + step_t
                out[new_key] = coeff
                push(new_key, coeff)
    return out


def solve_directional_scale(
    x: VField,
    h: Jet,
    init: Rational | int = 1,
    gauge: Jet | None = None,
    order: int | None = None,
) -> Jet:
    """Solve ``X(g) = h * g`` with ``g(p) = init``.

    Args:
        x: Field with d/dt component exactly 1
        h: Coefficient jet
        init: Value at the expansion point
        gauge: Optional t-free jet with zero constant term added to the free data
        order: Validity order of ``g``; defaults to ``h.order + 1``

    Raises:
        ValueError: non-unit d/dt component, or a gauge with a constant term
    """
    space = x.chart.space
    order = h.order + 1 if order is None else order
    start = Jet.constant(space, init, order)
    if gauge is not None:
        if gauge.constant_term():
            raise ValueError("transverse gauge must vanish at the expansion point")
        start = start + gauge
    (g,) = solve_flow_system(x, lambda ys: [h * ys[0]], [start], order)
    return g
