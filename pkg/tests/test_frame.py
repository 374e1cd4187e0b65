"""Tests for the canonical bundle and the adapted frame."""

from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from src.bundle import FIBER_NAMES, bundle_space, lift_X, make_bundle_chart
from src.errors import InputError
from src.expr import parse
from src.fields import Chart, VField, lie_bracket
from src.frame import (
    adapted_coefficients,
    bf1_coefficient,
    bv_index,
    coefficient_table,
    exact_residual,
    solve_normalization,
    torsion_functionals,
    uniqueness_probe,
    verify_structural,
)
from src.invariants import torsion_table
from src.jets import Jet, JetSpace, VarKind
from src.normalize import normalize_pair, ode_field, vertical_field
from src.pipeline import build_frame, default_base_point, default_order, verification_suites


def _trivial_reference(k: int):
    order = default_order(k)
    chart = Chart.base(k, default_base_point(k))
    x = ode_field(Jet.zero(chart.space, order), chart, k)
    return normalize_pair(x, vertical_field(chart, k, order), k)


def _frame(k: int, rhs: str, point: dict | None = None, fiber: tuple = (1, 0, 1)):
    base = default_base_point(k)
    base.update(point or {})
    return build_frame(k, parse(rhs, k), base, fiber, default_order(k))


class TestBundleChart:
    """The chart (t, x0..xk, F0, F1, G) and its fundamental fields."""

    def test_space(self) -> None:
        space = bundle_space(JetSpace.series(["t", "x0"]))
        assert space.names == ("t", "x0", *FIBER_NAMES)
        assert space.kinds[2:] == (VarKind.LAURENT, VarKind.SERIES, VarKind.LAURENT)

    def test_chart_at_default_fiber(self) -> None:
        bundle = make_bundle_chart(_trivial_reference(3))
        assert bundle.dimension == 8
        assert bundle.base_dim == 5
        assert bundle.fiber_point == (1, 0, 1)
        assert bundle.chart.value("x0") == QQ(1, 2)

    @pytest.mark.parametrize(("fiber", "message"), [((0, 0, 1), "F0 = 0"), ((1, 0, 0), "G = 0")])
    def test_fiber_outside_orbit(self, fiber: tuple, message: str) -> None:
        with pytest.raises(InputError, match=message):
            make_bundle_chart(_trivial_reference(3), fiber)

    def test_lift_fiber_components(self) -> None:
        bundle = make_bundle_chart(_trivial_reference(3), (2, QQ(1, 2), 3))
        bx = lift_X(bundle)
        chart = bundle.chart
        assert chart.constant_term(bx["F0"]) == -1
        assert chart.constant_term(bx["F1"]) == QQ(-1, 8)
        assert chart.constant_term(bx["G"]) == QQ(-9, 4)
        assert chart.constant_term(bx["t"]) == QQ(1, 2)

    def test_lift_brackets(self) -> None:
        bundle = make_bundle_chart(_trivial_reference(3), (2, QQ(1, 3), 5))
        bx = lift_X(bundle)
        fund = bundle.fundamentals
        assert exact_residual("[BG,BX]=0", lie_bracket(fund.bg, bx)).holds
        assert exact_residual("[BF0,BX]=-BX", lie_bracket(fund.bf0, bx) + bx).holds
        residual = lie_bracket(fund.bf1, bx) + fund.bf0 * 2 + fund.bg * 3
        assert exact_residual("[BF1,BX]=-2BF0-kBG", residual).holds

    def test_fundamental_algebra(self) -> None:
        bundle = make_bundle_chart(_trivial_reference(3), (3, QQ(-1, 2), 2))
        fund = bundle.fundamentals
        assert exact_residual("[BF0,BF1]=BF1", lie_bracket(fund.bf0, fund.bf1) - fund.bf1).holds
        assert exact_residual("[BG,BF0]=0", lie_bracket(fund.bg, fund.bf0)).holds
        assert exact_residual("[BG,BF1]=0", lie_bracket(fund.bg, fund.bf1)).holds

    def test_lift_projects_to_base(self) -> None:
        bundle = make_bundle_chart(_trivial_reference(3), (2, QQ(1, 3), 5))
        bx = lift_X(bundle)
        f0 = bundle.chart.coordinate("F0", bundle.order)
        base = bundle.chart.names[: bundle.base_dim]
        for name in base:
            assert bx[name] * f0 == bundle.x[name]
            for field in bundle.fundamentals.as_list():
                assert field[name].is_zero()
        for name in FIBER_NAMES:
            assert bundle.x[name].is_zero()
            assert bundle.v[name].is_zero()

    def test_exact_residual_names_first_component(self) -> None:
        chart = Chart(JetSpace.series(["t", "x"]), [0, 0])
        residual = exact_residual("d_x=0", VField.coordinate(chart, "x", 2))
        assert not residual.holds
        assert residual.witness == "d_x: 1"


class TestFrameLayout:
    """Positions and coefficients of the frame."""

    def test_bv_index(self) -> None:
        assert bv_index(0) == 4
        assert bv_index(3) == 7

    def test_bf1_coefficients(self) -> None:
        assert bf1_coefficient(0, 3) == 0
        assert bf1_coefficient(2, 3) == -4
        assert bf1_coefficient(4, 3) == 0
        assert bf1_coefficient(1, 4) == -4


class TestAdaptedCoefficients:
    """BV^i = G/F0^i (ad_X^i V + sum_j c^i_j F1^(i-j) ad_X^j V) modulo BX, BG, BF0, BF1."""

    K3 = {"c1_0": -3, "c2_0": 6, "c2_1": -4, "c3_0": -6, "c3_1": 6, "c3_2": -3}

    def test_table_for_k3(self) -> None:
        assert coefficient_table(3) == self.K3

    @pytest.mark.parametrize("k", [3, 4, 5, 7])
    def test_closed_forms(self, k: int) -> None:
        table = coefficient_table(k)
        assert len(table) == k * (k + 1) // 2
        assert table["c1_0"] == -k
        assert table["c2_1"] == 2 - 2 * k
        assert table["c2_0"] == k * (k - 1)

    @pytest.mark.slow
    def test_read_from_trivial_frame(self) -> None:
        assert adapted_coefficients(_trivial_reference(3)) == self.K3

    @pytest.mark.slow
    @pytest.mark.parametrize(("k", "rhs"), [(3, "x0^2"), (4, "x1*x3")])
    def test_independent_of_equation(self, k: int, rhs: str) -> None:
        frame = _frame(k, rhs)
        assert adapted_coefficients(frame.bundle.reference) == coefficient_table(k)


@pytest.mark.slow
class TestTrivialEquation:
    """The flat model x^(k+1) = 0."""

    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_adapted_frame(self, k: int) -> None:
        frame = _frame(k, "0")
        assert frame.names[bv_index(0)] == "BV0"
        assert len(frame.bv) == k + 1
        assert verify_structural(frame).holds
        functionals = torsion_functionals(
            frame.bv[0], frame.bundle, solver=frame.solver, bx=frame.bx
        )
        assert functionals.nonzero() == []

    def test_uniqueness(self) -> None:
        frame = _frame(3, "0")
        report = uniqueness_probe(frame)
        assert report.all_break
        assert "T01_2" in report.broken["alpha"]
        assert "T01_0" in report.broken["gamma1"]

    def test_solve_on_explicit_bundle(self) -> None:
        bundle = make_bundle_chart(_trivial_reference(3), (2, 0, 1))
        frame = solve_normalization(bundle)
        assert frame.k == 3
        assert frame.bundle.fiber_point == (2, 0, 1)
        assert verify_structural(frame).holds


@pytest.mark.slow
class TestNontrivialEquations:
    """Identities that hold for every equation."""

    @pytest.mark.parametrize(
        ("k", "rhs", "point"),
        [
            (3, "x0^2", {}),
            (3, "x1*x2", {}),
            (3, "sin(x1)", {"x1": 0}),
            (4, "x0^2", {}),
            (4, "x1*x3", {}),
            (4, "sin(x1)", {"x1": 0}),
        ],
    )
    def test_verification_suites(self, k: int, rhs: str, point: dict) -> None:
        frame = _frame(k, rhs, point)
        for suite in verification_suites(frame):
            assert suite.holds, f"{suite.name}: {suite.first_failure()}"
        assert uniqueness_probe(frame).all_break

    def test_fiber_point_does_not_matter(self) -> None:
        frame = _frame(3, "x0^2", fiber=(2, QQ(1, 2), 3))
        assert verify_structural(frame).holds
        assert torsion_functionals(
            frame.bv[0], frame.bundle, solver=frame.solver, bx=frame.bx
        ).nonzero() == []

    def test_translated_points_agree(self) -> None:
        # x'''' = (x')^2 has the translations in t and x as symmetries
        base = default_base_point(3)
        shifted = {"t": base["t"] + 5, "x0": base["x0"] + 3}
        first, second = _frame(3, "x1^2"), _frame(3, "x1^2", shifted)
        assert second.bundle.chart.value("x0") == base["x0"] + 3
        for name, jet in first.unknowns.items():
            assert jet == second.unknowns[name], name
        assert torsion_table(first).constant_terms() == torsion_table(second).constant_terms()
