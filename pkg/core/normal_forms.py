"""The two shipped equations brought to the canard normal form by hand.

See docs/derivations.md for the changes of variables. Both have p = 1 and
P, Q of the form c(x)/(1 + w) or c(x), so their w-expansions are geometric.
"""
from __future__ import annotations

import logging
from fractions import Fraction

from core.exact_algebra import (
    DensePolynomial,
    TruncatedBiSeries,
    TruncatedSeries,
    rational_series,
)
from core.formal_canard import NormalFormProblem, canard_formal, minimum_x_order

logger = logging.getLogger(__name__)

ONE_PLUS_X = DensePolynomial((1, 1))
TWO_PLUS_X = DensePolynomial((2, 1))


def _bi(series: TruncatedSeries) -> TruncatedBiSeries:
    return TruncatedBiSeries.from_x_series(series, 0)


def _geometric_in_w(coefficient: TruncatedSeries, count: int) -> tuple[TruncatedBiSeries, ...]:
    """c(x)/(1 + w) = sum_m (-1)^m c(x) w^m, first ``count`` powers."""
    return tuple(_bi(coefficient.scale((-1) ** m)) for m in range(count))


def _default_x_order(eps_order: int, x_order: int | None) -> int:
    return minimum_x_order(1, eps_order) if x_order is None else x_order


def brusselator_normal_form(eps_order: int, x_order: int | None = None) -> NormalFormProblem:
    """eps y' = (4x(1+x) + eps/(1+x)) y + 3/(1+x) - 2(1+x) alpha - 4 eps y^2 x(1+x)/(1+eps y),
    alpha = (a - 1)/eps."""
    Nx = _default_x_order(eps_order, x_order)
    one = DensePolynomial.constant(1)
    f = TruncatedSeries.from_polynomial(ONE_PLUS_X.scale(4), Nx)
    g = rational_series(one, ONE_PLUS_X, Nx)
    h = rational_series(DensePolynomial.constant(3), ONE_PLUS_X, Nx)
    p_base = TruncatedSeries.from_polynomial(DensePolynomial((0, -4, -4)), Nx)
    q = TruncatedSeries.from_polynomial(ONE_PLUS_X.scale(-2), Nx)
    return NormalFormProblem(
        p=1,
        f=f,
        g=_bi(g),
        h=_bi(h),
        P_w_powers=_geometric_in_w(p_base, max(eps_order, 1)),
        Q_w_powers=(_bi(q),),
        eps_order=eps_order,
        x_order=Nx,
        q_polynomial_in_w=True,
        name="brusselator",
    )


def vdp_normal_form(eps_order: int, x_order: int | None = None) -> NormalFormProblem:
    """Van der Pol around the col u = 1, x = u - 1, v = -(1 + eps y)/(x + 2),
    alpha_vdp = 1 + eps alpha."""
    Nx = _default_x_order(eps_order, x_order)
    one = DensePolynomial.constant(1)
    square = TWO_PLUS_X * TWO_PLUS_X
    f = TruncatedSeries.from_polynomial(square, Nx)
    g = rational_series(one, TWO_PLUS_X, Nx)
    p_base = TruncatedSeries.from_polynomial(-(square * DensePolynomial((0, 1))), Nx)
    q_base = TruncatedSeries.from_polynomial(square, Nx)
    return NormalFormProblem(
        p=1,
        f=f,
        g=_bi(g),
        h=_bi(g),
        P_w_powers=_geometric_in_w(p_base, max(eps_order, 1)),
        Q_w_powers=_geometric_in_w(q_base, eps_order + 1),
        eps_order=eps_order,
        x_order=Nx,
        name="vdp",
    )


def brusselator_alpha(eps_order: int) -> tuple[Fraction, ...]:
    """alpha_0..alpha_N of the Brusselator canard; a = 1 + sum alpha_n eps^(n+1)."""
    solution = canard_formal(brusselator_normal_form(eps_order))
    return solution.constants()


def brusselator_slow_curve(order: int, x_order: int | None = None) -> tuple[TruncatedSeries, ...]:
    """Phi_0..Phi_order as x-series, from z = Phi_0 (1 + eps y)."""
    eps_order = max(order - 1, 0)
    Nx = _default_x_order(eps_order, x_order)
    logger.debug(f"Attempting Brusselator slow curve to order {order}")
    phi0 = rational_series(DensePolynomial.constant(Fraction(1, 2)), ONE_PLUS_X * ONE_PLUS_X * ONE_PLUS_X, Nx)
    curve = [phi0]
    if order >= 1:
        solution = canard_formal(brusselator_normal_form(eps_order, Nx))
        curve += [phi0 * y_n for y_n in solution.y[:order]]
    logger.info(f"Successfully built Brusselator slow curve to order {order}")
    return tuple(curve)


# closed forms, valid away from x = -1

def brusselator_phi0(x: complex) -> complex:
    return 1 / (2 * (1 + x) ** 3)


def brusselator_phi1(x: complex) -> complex:
    return 3 * (2 + x) / (8 * (1 + x) ** 5)


def brusselator_phi2(x: complex) -> complex:
    return 3 * (5 * x**3 + 23 * x**2 + 42 * x + 30) / (32 * (1 + x) ** 7)


def brusselator_slow_value(x: complex, eps: complex, order: int = 2) -> complex:
    terms = (brusselator_phi0, brusselator_phi1, brusselator_phi2)
    if order > 2:
        raise ValueError("closed forms are available up to order 2")
    return sum(eps**k * terms[k](x) for k in range(order + 1))


def vdp_y0(x: complex) -> complex:
    return (x * x + 6 * x + 12) / (8 * (2 + x) ** 3)
