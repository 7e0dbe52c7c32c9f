"""Inner solutions near the turning points and their Stokes differences.

Van der Pol:  Y0 Y0' = 2X Y0 + 2, solved through Airy functions.
Brusselator:  Y0 Y0' = -(2/X)(Y0 - 1/(2X^3))(Y0 + 1/X), solved through the
Riccati variable t(v), which needs the integral of e^(w^2/2)/w^2 from i inf.
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction

import mpmath
import numpy as np

from core.airy import airy_branch
from core.errors import NewtonDivergence, SectorViolation, ZeroOfY0
from model.InnerBranchEnum import InnerBranchEnum
from schema.StokesReport import StokesSample

logger = logging.getLogger(__name__)

DEFAULT_DPS = 30
NEWTON_ITERATIONS = 80
SECTOR_MARGIN = 1e-3


def _mu():
    return mpmath.cbrt(mpmath.mpf(1) / 4)


def _precision_loss(diff, reference, dps: int) -> bool:
    return abs(diff) < 1e3 * mpmath.mpf(10) ** (-dps) * abs(reference)


# Van der Pol

VDP_BRANCHES = {InnerBranchEnum.plus: 2, InnerBranchEnum.minus: 1}


def vdp_airy_x(z, k: int, dps: int = DEFAULT_DPS):
    """X_k(z) = 2 mu j^k Ai'(-mu j^k z)/Ai(-mu j^k z)."""
    with mpmath.workdps(dps + 10):
        mu = _mu()
        ai, dai = airy_branch(-mu * mpmath.mpc(z), k, dps + 10)
        if abs(ai) <= mpmath.mpf(10) ** (-dps) * abs(dai):
            raise ZeroOfY0(f"Ai vanishes near z = {complex(z)}", branch=k)
        # dai already carries the j^k factor
        return 2 * mu * dai / ai


def vdp_inner_Y0(X, branch: InnerBranchEnum | int = InnerBranchEnum.plus, dps: int = DEFAULT_DPS):
    """Y0 = X^2 + z with z solving X_k(z) = X, by Newton with dX/dz = (X^2 + z)/2."""
    k = VDP_BRANCHES[InnerBranchEnum(branch)] if not isinstance(branch, int) else branch
    with mpmath.workdps(dps + 10):
        target = mpmath.mpc(X)
        z = -target**2
        tolerance = mpmath.mpf(10) ** (-(dps + 3)) * max(1, abs(target))
        residual = vdp_airy_x(z, k, dps) - target
        for _ in range(NEWTON_ITERATIONS):
            current = residual + target
            slope = (current**2 + z) / 2
            if slope == 0:
                raise NewtonDivergence("dX/dz vanished", z=complex(z))
            step = residual / slope
            damping = 1
            while True:
                candidate = z - damping * step
                new_residual = vdp_airy_x(candidate, k, dps) - target
                if abs(new_residual) < abs(residual) or damping < 1e-3:
                    break
                damping /= 2
            z, residual = candidate, new_residual
            if abs(residual) <= tolerance:
                y0 = target**2 + z
                if y0 == 0:
                    raise ZeroOfY0("inner solution vanishes", X=complex(X))
                return +y0
        logger.error(f"Newton for the Van der Pol inner solution failed at X={complex(X)}")
        raise NewtonDivergence(f"no convergence at X = {complex(X)}", residual=float(abs(residual)))


def vdp_stokes_formula(X: float) -> float:
    """(4/e) X^2 exp(-2 X^3/3)."""
    return 4 / math.e * X**2 * math.exp(-2 * X**3 / 3)


def vdp_stokes_diff(X: float, dps: int = DEFAULT_DPS) -> StokesSample:
    with mpmath.workdps(dps + 10):
        plus = vdp_inner_Y0(X, InnerBranchEnum.plus, dps)
        minus = vdp_inner_Y0(X, InnerBranchEnum.minus, dps)
        diff = plus - minus
        formula = vdp_stokes_formula(X)
        return StokesSample(
            family="vdp",
            x=X,
            y_plus_re=float(plus.real),
            y_plus_im=float(plus.imag),
            diff_re=float(diff.real),
            diff_im=float(diff.imag),
            formula=formula,
            ratio=float(diff.imag) / formula,
            precision_loss=_precision_loss(diff, plus, dps),
            dps=dps,
        )


def vdp_inner_series(K: int) -> tuple[Fraction, ...]:
    """c_0..c_K with Y0 ~ sum c_k X^(-1-3k); 2 c_m = -sum_(i+j=m-1) (1+3j) c_i c_j."""
    c = [Fraction(-1)]
    for m in range(1, K + 1):
        total = sum((1 + 3 * j) * c[m - 1 - j] * c[j] for j in range(m))
        c.append(-total / 2)
    return tuple(c)


# Brusselator

def _check_sector(v, branch: InnerBranchEnum):
    angle = float(mpmath.arg(v))
    if branch is InnerBranchEnum.minus:
        angle = -angle
    # plus branch: arg v in [-pi/4, 5 pi/4]; the upper end wraps past pi
    if angle < -math.pi / 4 + SECTOR_MARGIN and angle > -3 * math.pi / 4 - SECTOR_MARGIN:
        raise SectorViolation(f"v = {complex(v)} lies outside the {branch.value} sector", arg=angle)


def exp_integral_closed(v):
    """Integral of e^(w^2/2)/w^2 from i inf to v, by parts:
    -e^(v^2/2)/v + sqrt(pi/2) (erfi(v/sqrt 2) - i)."""
    v = mpmath.mpc(v)
    return -mpmath.exp(v * v / 2) / v + mpmath.sqrt(mpmath.pi / 2) * (mpmath.erfi(v / mpmath.sqrt(2)) - 1j)


def _tail(u):
    """Integral from i inf to u for large |u| on the upper imaginary axis."""
    inverse = 1 / (u * u)
    return mpmath.exp(u * u / 2) / u**3 * (1 + 3 * inverse + 15 * inverse**2 + 105 * inverse**3)


def exp_integral_quadrature(v, cutoff: float = 12.0):
    """Same integral by tanh-sinh quadrature along i cutoff -> i -> v, plus the analytic tail."""
    integrand = lambda w: mpmath.exp(w * w / 2) / (w * w)
    top = mpmath.mpc(0, cutoff)
    return _tail(top) + mpmath.quad(integrand, [top, mpmath.mpc(0, 1), mpmath.mpc(v)])


def exp_integral_full_line(cutoff: float = 12.0):
    """Integral over -i inf -> +i inf avoiding w = 0 by -i -> 1 -> i; equals i sqrt(2 pi)."""
    integrand = lambda w: mpmath.exp(w * w / 2) / (w * w)
    bottom, top = mpmath.mpc(0, -cutoff), mpmath.mpc(0, cutoff)
    body = mpmath.quad(integrand, [bottom, mpmath.mpc(0, -1), 1, mpmath.mpc(0, 1), top])
    return _tail(bottom) + body - _tail(top)


def brusselator_inner_t(
    v, branch: InnerBranchEnum = InnerBranchEnum.plus, dps: int = DEFAULT_DPS, method: str = "closed"
):
    """t(v) = (v^2 - 1)/v - 1/(v^2 e^(-v^2/2) J(v)), J = I(v) + C with C = 0 (plus) or i sqrt(2 pi) (minus)."""
    branch = InnerBranchEnum(branch)
    with mpmath.workdps(dps + 10):
        v = mpmath.mpc(v)
        _check_sector(v, branch)
        integral = exp_integral_closed(v) if method == "closed" else exp_integral_quadrature(v)
        if branch is InnerBranchEnum.minus:
            integral += 1j * mpmath.sqrt(2 * mpmath.pi)
        return (v * v - 1) / v - 1 / (v * v * mpmath.exp(-v * v / 2) * integral)


def brusselator_inner_Y0(X, branch: InnerBranchEnum = InnerBranchEnum.plus, dps: int = DEFAULT_DPS):
    """Solve t(v) = 1/X by Newton (dt/dv = t^2 + 2 - v t), then Y0 = -t^3 - 2t + t^2 v."""
    branch = InnerBranchEnum(branch)
    with mpmath.workdps(dps + 10):
        t_target = 1 / mpmath.mpc(X)
        v = 2 * mpmath.mpc(X)
        tolerance = mpmath.mpf(10) ** (-(dps + 3)) * abs(t_target)
        t = brusselator_inner_t(v, branch, dps)
        residual = t - t_target
        for _ in range(NEWTON_ITERATIONS):
            slope = t * t + 2 - v * t
            if slope == 0:
                raise NewtonDivergence("dt/dv vanished", v=complex(v))
            step = residual / slope
            damping = 1
            while True:
                candidate = v - damping * step
                t_new = brusselator_inner_t(candidate, branch, dps)
                if abs(t_new - t_target) < abs(residual) or damping < 1e-3:
                    break
                damping /= 2
            v, t = candidate, t_new
            residual = t - t_target
            if abs(residual) <= tolerance:
                return -(t_target**3) - 2 * t_target + t_target**2 * v
        logger.error(f"Newton for the Brusselator inner solution failed at X={complex(X)}")
        raise NewtonDivergence(f"no convergence at X = {complex(X)}", residual=float(abs(residual)))


def brusselator_stokes_formula(X: float) -> float:
    """32 sqrt(2 pi) X^4 exp(-2 X^2)."""
    return 32 * math.sqrt(2 * math.pi) * X**4 * math.exp(-2 * X**2)


def brusselator_stokes_diff(X: float, dps: int = DEFAULT_DPS) -> StokesSample:
    with mpmath.workdps(dps + 10):
        plus = brusselator_inner_Y0(X, InnerBranchEnum.plus, dps)
        minus = brusselator_inner_Y0(X, InnerBranchEnum.minus, dps)
        diff = plus - minus
        formula = brusselator_stokes_formula(X)
        return StokesSample(
            family="brusselator",
            x=X,
            y_plus_re=float(plus.real),
            y_plus_im=float(plus.imag),
            diff_re=float(diff.real),
            diff_im=float(diff.imag),
            formula=formula,
            ratio=float(diff.imag) / formula,
            precision_loss=_precision_loss(diff, plus, dps),
            dps=dps,
        )


def brusselator_inner_series(K: int) -> tuple[Fraction, ...]:
    """d_0..d_K with Y0 ~ sum d_k X^(-3-2k)."""
    d = [Fraction(1, 2)]
    for m in range(K):
        pairs = [(i, m - i) for i in range(m + 1)]
        A = -sum((3 + 2 * j) * d[i] * d[j] for i, j in pairs)
        B = sum(d[i] * d[j] for i, j in pairs)
        d.append((-2 * B + d[m] - A) / 2)
    return tuple(d)


def inner_series_value(coefficients: tuple[Fraction, ...], X: float, lead: int, stride: int) -> float:
    """sum c_k X^(-lead - stride k), truncated before the smallest term."""
    total, previous = 0.0, math.inf
    for k, c in enumerate(coefficients):
        term = float(c) * X ** (-lead - stride * k)
        if abs(term) > previous:
            break
        total += term
        previous = abs(term)
    return total


def stokes_log_slope(samples: list[StokesSample], prefactor_power: int, exponent_power: int) -> float:
    """Least-squares slope of log(|diff|/X^prefactor_power) against X^exponent_power."""
    xs = np.array([s.x for s in samples])
    diffs = np.array([math.hypot(s.diff_re, s.diff_im) for s in samples])
    design = np.vstack([xs**exponent_power, np.ones_like(xs)]).T
    slope, _ = np.linalg.lstsq(design, np.log(diffs / xs**prefactor_power), rcond=None)[0]
    return float(slope)
