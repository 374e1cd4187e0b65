"""Tests for flow solutions and the normalization of the reference pair."""

from __future__ import annotations

import pytest
from pydantic import ValidationError
from sympy.polys.domains import QQ

from src.errors import JetSpaceMismatchError
from src.expr import expand_to_jet, parse
from src.fields import Chart, VField
from src.jets import Jet, JetSpace, VarKind
from src.normalize import (
    NormalizationGauge,
    ad_expansion,
    normalize_pair,
    ode_field,
    random_transverse_gauge,
    solve_directional_scale,
    solve_flow_system,
    vertical_field,
    wunschmann_residuals,
)
from src.pipeline import default_order


@pytest.fixture
def chart() -> Chart:
    return Chart(JetSpace.series(["t", "x"]), [0, 0])


def _trivial_pair(k: int) -> tuple[VField, VField]:
    order = default_order(k)
    point = {"t": 0, **{f"x{i}": QQ(1, i + 2) for i in range(k + 1)}}
    base = Chart.base(k, point)
    return ode_field(Jet.zero(base.space, order), base, k), vertical_field(base, k, order)


class TestDirectionalScale:
    """Solutions of X(g) = h g."""

    def test_exponential(self, chart: Chart) -> None:
        dt = VField.coordinate(chart, "t", 6)
        g = solve_directional_scale(dt, Jet.constant(chart.space, 1, 4))
        assert g.order == 5
        factorial = 1
        for n in range(6):
            factorial *= max(n, 1)
            assert g.coefficient((n, 0)) == QQ(1, factorial)

    def test_zero_rate_keeps_initial_data(self, chart: Chart) -> None:
        dt = VField.coordinate(chart, "t", 6)
        gauge = Jet.variable(chart.space, "x", 5)
        g = solve_directional_scale(dt, Jet.zero(chart.space, 4), init=3, gauge=gauge)
        assert g == Jet.constant(chart.space, 3, 5) + gauge

    def test_transverse_data_is_transported(self, chart: Chart) -> None:
        field = VField.coordinate(chart, "t", 6) + VField.coordinate(chart, "x", 6) * 2
        gauge = Jet.variable(chart.space, "x", 5)
        g = solve_directional_scale(field, Jet.zero(chart.space, 4), gauge=gauge)
        expected = Jet.from_dict(chart.space, {(0, 0): 1, (0, 1): 1, (1, 0): -2}, 5)
        assert g == expected
        assert field.apply(g) == Jet.zero(chart.space, 4)

    def test_gauge_must_vanish_at_point(self, chart: Chart) -> None:
        dt = VField.coordinate(chart, "t", 6)
        with pytest.raises(ValueError, match="vanish"):
            solve_directional_scale(
                dt, Jet.zero(chart.space, 4), gauge=Jet.constant(chart.space, 1, 5)
            )

    def test_non_unit_time_component(self, chart: Chart) -> None:
        field = VField.coordinate(chart, "t", 6) * 2
        with pytest.raises(ValueError, match="non-unit"):
            solve_directional_scale(field, Jet.zero(chart.space, 4))

    def test_laurent_chart_rejected(self) -> None:
        space = JetSpace(["t", "F0"], [VarKind.SERIES, VarKind.LAURENT])
        laurent = Chart(space, [0, 1])
        with pytest.raises(JetSpaceMismatchError):
            solve_directional_scale(VField.coordinate(laurent, "t", 3), Jet.zero(space, 2))


class TestFlowSystem:
    """First-order systems along a field."""

    def test_harmonic_oscillator(self, chart: Chart) -> None:
        dt = VField.coordinate(chart, "t", 6)
        space = chart.space
        sine, cosine = solve_flow_system(
            dt,
            lambda ys: [ys[1], -ys[0]],
            [Jet.zero(space, 5), Jet.constant(space, 1, 5)],
            5,
        )
        assert sine.coefficient((1, 0)) == 1
        assert sine.coefficient((3, 0)) == QQ(-1, 6)
        assert sine.coefficient((5, 0)) == QQ(1, 120)
        assert cosine.coefficient((4, 0)) == QQ(1, 24)
        assert sine * sine + cosine * cosine == Jet.constant(space, 1, 5)

    def test_initial_data_must_be_t_free(self, chart: Chart) -> None:
        dt = VField.coordinate(chart, "t", 6)
        with pytest.raises(ValueError, match="must not depend on t"):
            solve_flow_system(
                dt, lambda ys: [ys[0]], [Jet.variable(chart.space, "t", 5)], 5
            )


class TestNormalizationGauge:
    """Validation of the free data."""

    def test_defaults_are_canonical(self) -> None:
        gauge = NormalizationGauge()
        assert gauge.is_canonical
        assert gauge.f_value == 1

    def test_rescalings_must_be_nonzero(self) -> None:
        with pytest.raises(ValidationError, match="nonzero"):
            NormalizationGauge(f_value=0)

    def test_values_must_be_exact(self) -> None:
        with pytest.raises(ValidationError):
            NormalizationGauge(g_value=0.5)
        assert NormalizationGauge(df_value="2/4").df_value == QQ(1, 2)

    def test_random_gauge_is_seeded(self) -> None:
        x, _ = _trivial_pair(3)
        first = random_transverse_gauge(x.chart, 6, seed=5, free_data=True)
        second = random_transverse_gauge(x.chart, 6, seed=5, free_data=True)
        assert first.f_value == second.f_value
        assert first.g_transverse == second.g_transverse
        assert not first.is_canonical
        assert first.f_transverse.constant_term() == 0


class TestNormalizePair:
    """Projective rescaling of X_F and normal rescaling of d/dx_k."""

    def test_raw_expansion_of_trivial_equation(self) -> None:
        x, v = _trivial_pair(3)
        expansion = ad_expansion(x, v, 3)
        assert all(a.is_zero() for a in expansion.a)
        assert expansion.a_x.is_zero()
        assert len(expansion.powers) == 5

    def test_constant_coefficient_expansion(self) -> None:
        x, v = _trivial_pair(3)
        chart = x.chart
        order = default_order(3)
        x = ode_field(chart.coordinate("x3", order), chart, 3)
        expansion = ad_expansion(x, v, 3)
        # ad_X^4 V = -ad_X^3 V for x'''' = x'''
        assert [chart.constant_term(a) for a in expansion.a] == [0, 0, 0, -1]
        assert all(a.is_constant() for a in expansion.a)
        assert expansion.a_x.is_zero()

    @pytest.mark.parametrize("k", [3, 4])
    def test_trivial_equation_is_already_normal(self, k: int) -> None:
        x, v = _trivial_pair(k)
        reference = normalize_pair(x, v, k)
        assert reference.f == Jet.constant(x.chart.space, 1, reference.f.order)
        assert reference.g == Jet.constant(x.chart.space, 1, reference.g.order)
        result = wunschmann_residuals(reference)
        assert result.holds
        assert result.constant_terms == [0] * (k - 1)

    def test_gauge_fixes_the_free_values(self) -> None:
        x, v = _trivial_pair(3)
        gauge = random_transverse_gauge(x.chart, default_order(3), seed=3, free_data=True)
        reference = normalize_pair(x, v, 3, gauge=gauge)
        chart = reference.chart
        assert chart.constant_term(reference.f) == gauge.f_value
        assert chart.constant_term(reference.g) == gauge.g_value
        assert chart.constant_term(x.apply(reference.f)) == gauge.df_value
        assert reference.expansion.a[3].is_zero()
        assert reference.expansion.a[2].is_zero()

    def test_residuals_of_trivial_equation_vanish_in_any_gauge(self) -> None:
        x, v = _trivial_pair(3)
        gauge = random_transverse_gauge(x.chart, default_order(3), seed=8)
        reference = normalize_pair(x, v, 3, gauge=gauge)
        assert all(a.is_zero() for a in reference.residuals)

    def test_nonlinear_right_side_is_normalized(self, base_point3: dict[str, object]) -> None:
        order = default_order(3)
        chart = Chart.base(3, base_point3)
        rhs = expand_to_jet(parse("x0^2 + t*x3", 3), base_point3, order, space=chart.space)
        x = ode_field(rhs, chart, 3)
        reference = normalize_pair(x, vertical_field(chart, 3, order), 3)
        assert reference.expansion.a[3].is_zero()
        assert reference.expansion.a[2].is_zero()
        assert len(reference.residuals) == 2
