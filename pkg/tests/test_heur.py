from __future__ import annotations

import math
from fractions import Fraction

import pytest

from waring import (
    HeuristicModel,
    Outlook,
    PreconditionError,
    ToleranceError,
    adaptive_simpson,
    density,
    expected_coincidences,
    exponent_E,
    volume,
)

B_FIFTH_PAIR_TRIPLE = 563661204304422162432  # 14132^5 + 220^5


def gamma_volume(j: int, k: int) -> float:
    """Closed form for the orthant volume, used as an independent oracle."""
    return math.gamma(1 + 1 / k) ** j / math.gamma(1 + j / k)


class TestQuadrature:
    def test_simpson_on_polynomial(self):
        assert adaptive_simpson(lambda x: x**3, 0, 1, 1e-10) == pytest.approx(0.25, abs=1e-9)

    def test_fifth_power_area(self):
        v = volume(2, 5)
        assert 0.9501 < v.value < 0.9502

    def test_fifth_power_3d(self):
        assert volume(3, 5).value == pytest.approx(0.86629, abs=1e-4)

    def test_fifth_power_4d(self):
        assert volume(4, 5).value == pytest.approx(0.76306, abs=1e-4)

    def test_against_gamma_closed_form(self):
        for k in range(2, 7):
            for j in range(1, 7):
                assert volume(j, k).value == pytest.approx(gamma_volume(j, k), abs=2e-6), (j, k)

    def test_unit_volume_in_one_dimension(self):
        assert volume(1, 4).value == 1.0

    def test_decreasing_in_j(self):
        for k in (2, 3, 5):
            vals = [volume(j, k).value for j in range(2, 8)]
            assert all(a > b for a, b in zip(vals, vals[1:]))
            assert all(0 < v < 1 for v in vals)


class TestMonteCarlo:
    def test_agrees_with_quadrature_within_3_sigma(self):
        for k in (2, 3, 4, 5, 6):
            for j in (2, 3, 4):
                quad = volume(j, k)
                mc = volume(j, k, method="monte-carlo", samples=10**6)
                assert abs(mc.value - quad.value) < 3 * (mc.error + quad.error), (j, k)

    def test_deterministic_for_fixed_seed(self):
        a = volume(3, 5, method="monte-carlo", samples=10**5, seed=42)
        b = volume(3, 5, method="monte-carlo", samples=10**5, seed=42)
        assert a.value == b.value and a.seed == 42

    def test_seed_changes_stream(self):
        a = volume(3, 5, method="monte-carlo", samples=10**5, seed=1)
        b = volume(3, 5, method="monte-carlo", samples=10**5, seed=2)
        assert a.value != b.value

    def test_unachievable_tolerance_raises_with_estimate(self):
        with pytest.raises(ToleranceError) as exc:
            volume(2, 5, method="monte-carlo", samples=10**4, tol=1e-9)
        assert 0.9 < exc.value.estimate < 1.0
        assert exc.value.error > 1e-9


class TestDensity:
    def test_printed_constants(self):
        model = HeuristicModel.build(5, 4)
        assert model.density_constant(2) == pytest.approx(0.19003, rel=5e-3)
        assert model.density_constant(3) == pytest.approx(0.08663, rel=5e-3)
        assert model.density_constant(4) == pytest.approx(0.02544, rel=5e-3)

    def test_density_scales_like_power_law(self):
        model = HeuristicModel.build(5, 2)
        assert density(10**10, 2, 5, model) == pytest.approx(
            model.density_constant(2) * (10**10) ** (-0.6), rel=1e-12
        )

    def test_point_probability_of_the_known_coincidence(self):
        model = HeuristicModel.build(5, 4)
        assert density(B_FIFTH_PAIR_TRIPLE, 4, 5, model) == pytest.approx(1.8e-6, rel=0.01)

    def test_model_exponent_must_match(self):
        model = HeuristicModel.build(5, 3)
        with pytest.raises(PreconditionError):
            density(100, 2, 4, model)


class TestExponent:
    def test_pair_triple_is_logarithmic(self):
        verdict = exponent_E([(2, 5), (3, 5)])
        assert verdict.value == Fraction(-1)
        assert verdict.outlook is Outlook.LOGARITHMIC

    def test_sixth_power_run_at_d3(self):
        verdict = exponent_E([(3, 6), (4, 6), (5, 6)])
        assert verdict.value == Fraction(-1)

    def test_sixth_power_run_at_d2(self):
        verdict = exponent_E([(2, 6), (3, 6), (4, 6), (5, 6)])
        assert verdict.value == Fraction(-5, 3)
        assert verdict.outlook is Outlook.FINITE

    def test_divergent_case(self):
        verdict = exponent_E([(4, 5)])
        assert verdict.value == Fraction(-1, 5)
        assert verdict.outlook is Outlook.INFINITE

    def test_mixed_exponents_allowed(self):
        verdict = exponent_E([(2, 4), (3, 6)])
        assert verdict.value == Fraction(-1)


class TestCoincidences:
    def test_finite_case_closed_form(self):
        model = HeuristicModel.build(5, 4)
        est = expected_coincidences(B_FIFTH_PAIR_TRIPLE, [(2, 5), (3, 5), (4, 5)], model)
        assert est.outlook is Outlook.FINITE
        assert est.exponent == Fraction(-6, 5)
        # coefficient is the product of the three density constants
        c = (
            model.density_constant(2)
            * model.density_constant(3)
            * model.density_constant(4)
        )
        assert est.coefficient == pytest.approx(c, rel=1e-12)
        assert est.coefficient == pytest.approx(0.0004188, rel=5e-3)
        # integral of C * x^(-6/5) from b: 5 * C * b^(-1/5)
        assert est.value == pytest.approx(5 * c * B_FIFTH_PAIR_TRIPLE ** (-0.2), rel=1e-12)

    def test_fundamental_theorem_spot_check(self):
        # d/db of the tail integral must be -C * b^E
        model = HeuristicModel.build(5, 4)
        pairs = [(2, 5), (3, 5), (4, 5)]
        b = 10**20
        h = 10**14
        hi = expected_coincidences(b + h, pairs, model).value
        lo = expected_coincidences(b - h, pairs, model).value
        derivative = (hi - lo) / (2 * h)
        est = expected_coincidences(b, pairs, model)
        assert derivative == pytest.approx(-est.coefficient * b ** (-1.2), rel=1e-4)

    def test_logarithmic_case_is_flagged_not_numbered(self):
        model = HeuristicModel.build(5, 3)
        est = expected_coincidences(100, [(2, 5), (3, 5)], model)
        assert est.outlook is Outlook.LOGARITHMIC
        assert est.value == math.inf

    def test_divergent_case(self):
        model = HeuristicModel.build(5, 4)
        est = expected_coincidences(100, [(4, 5)], model)
        assert est.outlook is Outlook.INFINITE
        assert est.value == math.inf

    def test_mixed_exponents_rejected(self):
        model = HeuristicModel.build(5, 4)
        with pytest.raises(PreconditionError):
            expected_coincidences(100, [(2, 5), (2, 4)], model)
