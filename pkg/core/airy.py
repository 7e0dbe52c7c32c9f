"""Ai and Ai' on the whole complex plane.

Inside the crossover radius the two Maclaurin sums are added in mpmath with
guard digits that absorb their cancellation. Outside it the standard
asymptotic expansion is used, and for |arg z| > 2 pi/3 the connection
Ai(z) = -j Ai(jz) - j^2 Ai(j^2 z) moves both evaluations back into the
sector where the expansion is dominant.
"""
from __future__ import annotations

import logging
import math
from functools import lru_cache

import mpmath

logger = logging.getLogger(__name__)

MIN_CROSSOVER = 4.5


def crossover_radius(digits: int) -> float:
    """Smallest r with exp(-(4/3) r^(3/2)) below 10^-digits, never under 4.5."""
    r = (0.75 * digits * math.log(10)) ** (2 / 3)
    return max(MIN_CROSSOVER, r)


def _guard_digits(radius: float) -> int:
    # partial sums grow like e^r while Ai decays like e^(-(2/3) r^(3/2))
    return math.ceil((radius + (2 / 3) * radius**1.5) / math.log(10)) + 5


@lru_cache(maxsize=None)
def _asymptotic_coefficients(count: int, dps: int) -> tuple[tuple, tuple]:
    with mpmath.workdps(dps):
        u = [mpmath.mpf(1)]
        v = [mpmath.mpf(1)]
        for k in range(1, count):
            u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
            v.append(-mpmath.mpf(6 * k + 1) / (6 * k - 1) * u[-1])
    return tuple(u), tuple(v)


def _maclaurin(z, dps: int):
    with mpmath.workdps(dps):
        z = mpmath.mpc(z)
        c1 = 1 / (mpmath.power(3, mpmath.mpf(2) / 3) * mpmath.gamma(mpmath.mpf(2) / 3))
        c2 = 1 / (mpmath.cbrt(3) * mpmath.gamma(mpmath.mpf(1) / 3))
        z3 = z**3
        f = t = mpmath.mpc(1)
        g = s = z
        df = d = z * z / 2
        dg = e = mpmath.mpc(1)
        tiny = mpmath.mpf(10) ** (-dps)
        k = 1
        while True:
            t = t * z3 / ((3 * k - 1) * (3 * k))
            s = s * z3 / ((3 * k) * (3 * k + 1))
            e = e * z3 / ((3 * k - 2) * (3 * k))
            if k > 1:
                d = d * z3 / ((3 * k - 3) * (3 * k - 1))
                df += d
            f += t
            g += s
            dg += e
            if k > 3 and max(abs(t), abs(s), abs(d), abs(e)) < tiny:
                break
            k += 1
        return c1 * f - c2 * g, c1 * df - c2 * dg


def _asymptotic_principal(z, dps: int):
    """Valid for |arg z| <= 2 pi/3 and |z| beyond the crossover."""
    with mpmath.workdps(dps):
        z = mpmath.mpc(z)
        zeta = mpmath.mpf(2) / 3 * z ** mpmath.mpf(1.5)
        quarter = z ** mpmath.mpf(0.25)
        u, v = _asymptotic_coefficients(200, dps)
        tiny = mpmath.mpf(10) ** (-dps)
        series_u = series_v = mpmath.mpc(0)
        power = mpmath.mpc(1)
        previous = mpmath.inf
        for k in range(len(u)):
            term_u = u[k] * power
            term_v = v[k] * power
            size = abs(term_u)
            if size > previous:
                break
            series_u += term_u
            series_v += term_v
            if size < tiny:
                break
            previous = size
            power = -power / zeta
        prefactor = mpmath.exp(-zeta) / (2 * mpmath.sqrt(mpmath.pi))
        return prefactor / quarter * series_u, -prefactor * quarter * series_v


def _asymptotic(z, dps: int):
    with mpmath.workdps(dps):
        z = mpmath.mpc(z)
        if abs(mpmath.arg(z)) <= 2 * mpmath.pi / 3:
            return _asymptotic_principal(z, dps)
        j = mpmath.expjpi(mpmath.mpf(2) / 3)
        a1, d1 = _asymptotic_principal(j * z, dps)
        a2, d2 = _asymptotic_principal(j * j * z, dps)
        return -j * a1 - j * j * a2, -j * j * d1 - j * d2


def airy(z, dps: int | None = None):
    """(Ai(z), Ai'(z)). With ``dps`` None the result is a Python complex pair
    accurate to about 1e-13 relative; otherwise mpmath values at ``dps`` digits."""
    digits = 16 if dps is None else dps
    radius = crossover_radius(digits)
    with mpmath.workdps(digits + 5):
        z = mpmath.mpc(z)
        if abs(z) <= radius:
            value = _maclaurin(z, digits + 5 + _guard_digits(radius))
        else:
            value = _asymptotic(z, digits + 5)
        if dps is None:
            return complex(value[0]), complex(value[1])
        return +value[0], +value[1]


def airy_branch(z, k: int, dps: int | None = None):
    """Ai_k(z) = Ai(j^k z) and its z-derivative j^k Ai'(j^k z)."""
    if k not in (0, 1, 2):
        raise ValueError("Airy branch index must be 0, 1 or 2")
    digits = 16 if dps is None else dps
    with mpmath.workdps(digits + 5):
        rotation = mpmath.expjpi(mpmath.mpf(2 * k) / 3)
        ai, dai = airy(rotation * mpmath.mpc(z), digits)
        dai = rotation * dai
        if dps is None:
            return complex(ai), complex(dai)
        return ai, dai
