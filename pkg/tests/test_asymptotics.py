import math
from fractions import Fraction

import pytest

from core.asymptotics import (
    brusselator_constant_candidates,
    fit_bn,
    gevrey_ratio,
    probe_brusselator_constant,
    regression_slope,
    richardson,
    sum_smallest_term,
    vdp_stokes_constant,
)
from core.errors import NoInteriorMinimum, RankDeficient, ZeroCoefficient
from core.formal_canard import vdp_bn, vdp_coefficients
from core.normal_forms import brusselator_alpha
from core.reference_values import BN_TABLE, FIT_CBRT_C, FIT_SQRT_C, VDP_ALPHA_TABLE, VDP_THEORETICAL_CONSTANT
from model.FitModelEnum import FitModelEnum


def test_fit_of_constant_data():
    result = fit_bn([(n, 0.7) for n in range(10, 21)])
    assert result.C == pytest.approx(0.7)
    assert result.a == pytest.approx(0, abs=1e-12)
    assert result.residual_norm == pytest.approx(0, abs=1e-12)
    assert (result.n_min, result.n_max, result.points) == (10, 20, 11)


@pytest.mark.parametrize("model, power", [(FitModelEnum.inv_sqrt_n, 0.5), (FitModelEnum.inv_cbrt_n, 1 / 3)])
def test_fit_recovers_synthetic_model(model, power):
    points = [(n, -0.58 + 0.37 * n**-power) for n in range(100, 160)]
    result = fit_bn(points, model)
    assert result.C == pytest.approx(-0.58, abs=1e-10)
    assert result.a == pytest.approx(0.37, abs=1e-8)
    assert result.model is model


def test_fit_honours_the_range():
    points = [(n, 1.0 if n < 50 else 2.0) for n in range(1, 100)]
    assert fit_bn(points, "sqrt", n_range=(60, 80)).C == pytest.approx(2.0)


def test_fit_needs_distinct_points():
    with pytest.raises(RankDeficient):
        fit_bn([(5, 1.0), (6, 1.1)])
    with pytest.raises(RankDeficient):
        fit_bn([(5, 1.0), (5, 1.1), (5, 1.2)])


def test_published_bn_fits_bracket_the_theoretical_constant():
    points = sorted(BN_TABLE.items())
    sqrt_fit = fit_bn(points, FitModelEnum.inv_sqrt_n)
    cbrt_fit = fit_bn(points, FitModelEnum.inv_cbrt_n)
    assert sqrt_fit.C > VDP_THEORETICAL_CONSTANT > cbrt_fit.C
    assert sqrt_fit.C == pytest.approx(FIT_SQRT_C, abs=1e-2)
    assert cbrt_fit.C == pytest.approx(FIT_CBRT_C, abs=1e-2)


@pytest.mark.slow
def test_computed_bn_fits_bracket_the_theoretical_constant():
    series = vdp_coefficients(155)
    points = [(n, float(vdp_bn(series, n))) for n in range(135, 156)]
    sqrt_fit = fit_bn(points, FitModelEnum.inv_sqrt_n)
    cbrt_fit = fit_bn(points, FitModelEnum.inv_cbrt_n)
    assert sqrt_fit.C > VDP_THEORETICAL_CONSTANT > cbrt_fit.C
    assert abs(gevrey_ratio(series)[150] - 0.75) < 0.02


def test_gevrey_ratio_of_factorials():
    ratios = gevrey_ratio([math.factorial(n) for n in range(12)])
    assert ratios == pytest.approx([1.0] * 11)
    exact = gevrey_ratio([Fraction(math.factorial(n), 3**n) for n in range(6)])
    assert exact == pytest.approx([1 / 3] * 5)


def test_gevrey_ratio_of_vdp_series_approaches_three_quarters():
    ratios = gevrey_ratio(vdp_coefficients(40))
    assert abs(ratios[-1] - 0.75) < 0.05
    assert abs(ratios[-1] - 0.75) < abs(ratios[5] - 0.75)


def test_gevrey_ratio_rejects_zero_coefficients():
    with pytest.raises(ZeroCoefficient):
        gevrey_ratio([1, 0, 2])


def test_smallest_term_summation_of_factorial_series():
    a = [math.factorial(n) for n in range(40)]
    result = sum_smallest_term(a, 0.12)
    assert result.n_opt == 8
    assert result.value == pytest.approx(sum(a[n] * 0.12**n for n in range(8)))
    assert result.smallest_term == pytest.approx(a[8] * 0.12**8)


def test_smallest_term_index_shrinks_with_eps():
    a = [math.factorial(n) for n in range(60)]
    indices = [sum_smallest_term(a, eps).n_opt for eps in (0.05, 0.08, 0.1, 0.2, 0.3)]
    assert indices == sorted(indices, reverse=True)


def test_geometric_series_has_no_interior_minimum():
    with pytest.raises(NoInteriorMinimum):
        sum_smallest_term([1] * 30, 0.5)
    with pytest.raises(ValueError):
        sum_smallest_term([1] * 30, 0)


def test_vdp_smallest_term_sum_matches_published_alpha():
    a = vdp_coefficients(40)
    result = sum_smallest_term(a, 0.05)
    assert result.value == pytest.approx(VDP_ALPHA_TABLE[0.05][0].real, abs=1e-4)
    assert abs(result.n_opt - 4 / (3 * 0.05)) <= 4
    assert abs(sum_smallest_term(a, 0.1).n_opt - 4 / (3 * 0.1)) <= 3


def test_richardson_removes_inverse_powers():
    sequence = [2 + 3 / n + 5 / n**2 for n in range(1, 12)]
    extrapolated = richardson(sequence, 2, start=1)
    assert len(extrapolated) == len(sequence) - 2
    assert extrapolated == pytest.approx([2.0] * len(extrapolated), abs=1e-9)
    assert richardson(sequence, 0) == pytest.approx(sequence)
    with pytest.raises(ValueError):
        richardson(sequence, -1)


def test_probe_recovers_a_planted_constant():
    a = [1.0] + [54 * n**2 * 1.5**n * math.factorial(n) * (1 + 1 / n) for n in range(1, 25)]
    report = probe_brusselator_constant(a)
    assert report.limit == pytest.approx(54, rel=1e-6)
    assert report.closest == "54"
    assert report.n[0] == 1 and len(report.c_n) == 24


def test_probe_on_the_brusselator_series_reports_both_candidates():
    a = (Fraction(1), *brusselator_alpha(6))
    report = probe_brusselator_constant(a)
    assert set(report.candidates) == {"54", "108e^-3/pi"}
    assert report.candidates["108e^-3/pi"] == pytest.approx(1.7115, abs=1e-4)
    assert report.closest in report.candidates
    assert len(report.extrapolated) == len(report.c_n) - 2
    assert brusselator_constant_candidates()["54"] == 54.0


def test_regression_slope_and_constants():
    assert regression_slope([1, 2, 3, 4], [1, 3, 5, 7]) == pytest.approx(2)
    assert vdp_stokes_constant() == pytest.approx(1.68256, abs=1e-4)


def test_first_scaled_coefficient(vdp_small):
    assert float(vdp_bn(vdp_small, 1)) == pytest.approx(-1 / 8 * 4 * math.e / 3)
