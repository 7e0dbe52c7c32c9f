import math
from fractions import Fraction

import mpmath
import pytest

from core.errors import DegenerateF, DegenerateQ, InsufficientPrecision, TruncationTooShort
from core.exact_algebra import DensePolynomial, TruncatedBiSeries, TruncatedSeries, rational_series
from core.formal_canard import (
    NormalFormProblem,
    canard_formal,
    canard_residual,
    vdp_bn,
    vdp_coefficients,
    vdp_recurrence_defect,
    vdp_series,
    vdp_theoretical_constant,
)
from core.normal_forms import (
    brusselator_alpha,
    brusselator_normal_form,
    brusselator_slow_curve,
    vdp_normal_form,
)


def test_vdp_leading_terms(vdp_small):
    assert vdp_small.a[0] == 1
    assert vdp_small.a[1] == Fraction(-1, 8)
    assert vdp_small.a[2] == Fraction(-3, 32)
    v0 = vdp_small.v[0]
    assert v0.pole_order == 1
    assert v0.numerator == DensePolynomial.constant(-1)


def test_vdp_first_two_corrections(vdp_small):
    v1, v2 = vdp_small.v[1], vdp_small.v[2]
    assert v1.pole_order == 4
    assert v1.numerator == DensePolynomial((7, 4, 1)).scale(Fraction(-1, 8))
    assert v2.pole_order == 7
    assert v2.numerator == DensePolynomial((121, 159, 126, 66, 21, 3)).scale(Fraction(-1, 32))


def test_vdp_degree_law(vdp_small):
    for n in range(1, vdp_small.order + 1):
        assert vdp_small.v[n].pole_order == 3 * n + 1
        assert vdp_small.v[n].numerator.degree == 3 * n - 1


def test_vdp_recurrence_is_exact(vdp_small):
    for n in range(vdp_small.order):
        assert vdp_recurrence_defect(vdp_small, n) == 0


def test_extending_the_series_keeps_earlier_terms(vdp_small):
    assert vdp_coefficients(5) == vdp_small.a[:6]


def test_b1_is_minus_e_over_six(vdp_small):
    with mpmath.workdps(30):
        assert mpmath.almosteq(vdp_bn(vdp_small, 1, digits=25), -mpmath.e / 6, rel_eps=mpmath.mpf(10) ** -24)


def test_bn_rejects_unsupported_precision(vdp_small):
    with pytest.raises(InsufficientPrecision):
        vdp_bn(vdp_small, 3, digits=10**6)


def test_theoretical_constant():
    value = vdp_theoretical_constant()
    assert value < 0
    assert abs(value) < 1
    assert float(value) == pytest.approx(-0.5813148764, abs=1e-10)


@pytest.mark.slow
def test_bn_table_values():
    series = vdp_coefficients(155)
    assert float(vdp_bn(series, 150, digits=20)) == pytest.approx(-0.5433906324, abs=1e-10)
    assert float(vdp_bn(series, 135, digits=20)) == pytest.approx(-0.5417512651, abs=1e-10)
    assert all(vdp_bn(series, n) < 0 for n in range(135, 156))


def test_brusselator_alpha():
    alpha = brusselator_alpha(3)
    assert alpha[0] == Fraction(3, 2)
    assert alpha[1] == Fraction(15, 8)


def test_brusselator_y0_is_the_slow_curve_ratio(brusselator_solution):
    y0 = brusselator_solution.y[0]
    closed = rational_series(DensePolynomial((Fraction(3, 2), Fraction(3, 4))), DensePolynomial((1, 2, 1)), y0.truncation_order)
    assert y0 == closed
    assert y0.coefficients[:2] == (Fraction(3, 2), Fraction(-9, 4))


def test_brusselator_slow_curve_closed_forms():
    phi = brusselator_slow_curve(2, x_order=12)
    order = phi[2].truncation_order
    one_plus_x = DensePolynomial((1, 1))
    phi1 = rational_series(DensePolynomial((6, 3)), one_plus_x.scale(8) * _power(one_plus_x, 4), order)
    phi2 = rational_series(DensePolynomial((90, 126, 69, 15)), _power(one_plus_x, 7).scale(32), order)
    assert phi[1].truncate(order) == phi1
    assert phi[2] == phi2


def _power(poly: DensePolynomial, k: int) -> DensePolynomial:
    out = DensePolynomial.constant(1)
    for _ in range(k):
        out = out * poly
    return out


def test_vdp_normal_form_reproduces_the_exact_recurrence(vdp_small):
    solution = canard_formal(vdp_normal_form(5))
    assert solution.constants() == vdp_small.a[1:7]
    y0 = solution.y[0]
    closed = rational_series(DensePolynomial((12, 6, 1)), _power(DensePolynomial((2, 1)), 3).scale(8), y0.truncation_order)
    assert y0 == closed


@pytest.mark.parametrize("builder", [brusselator_normal_form, vdp_normal_form])
def test_numerators_have_valuation_at_least_p(builder):
    problem = builder(6)
    solution = canard_formal(problem)
    for n in range(problem.eps_order + 1):
        numerator = solution.numerator(n)
        assert all(c == 0 for c in numerator.coefficients[: problem.p])


@pytest.mark.parametrize("builder", [brusselator_normal_form, vdp_normal_form])
def test_truncated_solution_satisfies_the_equation(builder):
    problem = builder(4, 16)
    solution = canard_formal(problem)
    residual = canard_residual(problem, solution)
    assert all(t.is_zero() for t in residual.eps_coefficients)


@pytest.mark.parametrize("order", [0, 1])
def test_perturbing_a_n_breaks_the_valuation(brusselator_solution, order):
    raw = brusselator_solution.raw_numerators[order]
    perturbed = brusselator_solution.a[order] + DensePolynomial.constant(Fraction(1, 1000))
    numerator = raw - TruncatedSeries.from_polynomial(perturbed, raw.truncation_order) * brusselator_solution.q00
    assert numerator.coefficients[0] != 0


def _toy(h_value, f_value=1, q_value=1, eps_order=3, x_order=None) -> NormalFormProblem:
    Nx = 2 * (eps_order + 1) - 1 if x_order is None else x_order
    series = lambda c: TruncatedSeries.constant(c, Nx)
    bi = lambda c: TruncatedBiSeries.from_x_series(series(c), 0)
    return NormalFormProblem(
        p=1,
        f=series(f_value),
        g=bi(1),
        h=bi(h_value),
        P_w_powers=(bi(0),),
        Q_w_powers=(bi(q_value),),
        eps_order=eps_order,
        x_order=Nx,
        p_polynomial_in_w=True,
        q_polynomial_in_w=True,
    )


def test_zero_forcing_gives_the_zero_solution():
    solution = canard_formal(_toy(0))
    assert all(a_n.is_zero() for a_n in solution.a)
    assert all(y_n.is_zero() for y_n in solution.y)


def test_degenerate_inputs_are_rejected():
    with pytest.raises(DegenerateQ):
        canard_formal(_toy(1, q_value=0))
    with pytest.raises(DegenerateF):
        canard_formal(_toy(1, f_value=0))
    with pytest.raises(TruncationTooShort):
        canard_formal(_toy(1, x_order=4))


def test_missing_w_powers_are_reported():
    problem = brusselator_normal_form(4)
    short = NormalFormProblem(**{**problem.__dict__, "P_w_powers": problem.P_w_powers[:2]})
    with pytest.raises(TruncationTooShort):
        canard_formal(short)


def test_toy_problem_first_order():
    # eps y' = x y + eps y + 1 + alpha: a_0 = -1, y_0 = 0, a_1 = 0
    solution = canard_formal(_toy(1))
    assert solution.constants()[:2] == (Fraction(-1), Fraction(0))
    assert solution.y[0].is_zero()
    assert math.isclose(float(solution.constants()[2]), 0.0)
