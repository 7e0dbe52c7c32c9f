"""Adaptive Dormand-Prince 5(4) integration of dy/dx = G(x, y) along complex polylines.

Each straight segment a -> b is parameterized by s in [0, 1] and integrated as
dy/ds = (b - a) G(a + s (b - a), y). The scalar type is Python ``complex`` up to
16 digits and ``mpmath.mpc`` beyond, with the tableau converted once.
"""
from __future__ import annotations

import logging
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from core.errors import IntegrationError, MaxStepsExceeded, PoleEncountered, StepUnderflow
from core.fields import ODEField
from core.relief import ComplexPath
from model.FieldKindEnum import FieldKindEnum
from schema.IntegratorConfig import IntegratorConfig

logger = logging.getLogger(__name__)

POLE_GUARD = 1e-8
SAFETY = 0.9
MIN_FACTOR, MAX_FACTOR = 0.2, 5.0
# PI controller exponents for an order 4 error estimate
ALPHA, BETA = 0.7 / 5, 0.4 / 5

_F = Fraction
C = (_F(0), _F(1, 5), _F(3, 10), _F(4, 5), _F(8, 9), _F(1), _F(1))
A = (
    (),
    (_F(1, 5),),
    (_F(3, 40), _F(9, 40)),
    (_F(44, 45), _F(-56, 15), _F(32, 9)),
    (_F(19372, 6561), _F(-25360, 2187), _F(64448, 6561), _F(-212, 729)),
    (_F(9017, 3168), _F(-355, 33), _F(46732, 5247), _F(49, 176), _F(-5103, 18656)),
    (_F(35, 384), _F(0), _F(500, 1113), _F(125, 192), _F(-2187, 6784), _F(11, 84)),
)
B5 = (_F(35, 384), _F(0), _F(500, 1113), _F(125, 192), _F(-2187, 6784), _F(11, 84), _F(0))
B4 = (_F(5179, 57600), _F(0), _F(7571, 16695), _F(393, 640), _F(-92097, 339200), _F(187, 2100), _F(1, 40))
E = tuple(b5 - b4 for b5, b4 in zip(B5, B4))


@dataclass
class Trajectory:
    """Accepted steps of one integration. ``s`` runs from 0 to the number of
    segments; sample k carries x, y and dy/ds at s[k]."""

    end_value: complex
    s: list[float] = field(default_factory=list)
    x: list[complex] = field(default_factory=list)
    y: list[complex] = field(default_factory=list)
    dyds: list[complex] = field(default_factory=list)
    step_count: int = 0
    rejected_steps: int = 0
    precision_digits: int = 16

    def evaluate(self, s: float) -> complex:
        """Cubic Hermite dense output between accepted steps."""
        if not self.s:
            raise IntegrationError("trajectory has no dense samples")
        if s <= self.s[0]:
            return self.y[0]
        if s >= self.s[-1]:
            return self.y[-1]
        k = bisect_right(self.s, s) - 1
        s0, s1 = self.s[k], self.s[k + 1]
        h = s1 - s0
        if h == 0:
            return self.y[k]
        t = (s - s0) / h
        h00 = 2 * t**3 - 3 * t**2 + 1
        h10 = t**3 - 2 * t**2 + t
        h01 = -2 * t**3 + 3 * t**2
        h11 = t**3 - t**2
        return h00 * self.y[k] + h10 * h * self.dyds[k] + h01 * self.y[k + 1] + h11 * h * self.dyds[k + 1]

    def rows(self) -> list[dict]:
        return [
            {"s": s, "x_re": float(x.real), "x_im": float(x.imag), "y_re": float(y.real), "y_im": float(y.imag)}
            for s, x, y in zip(self.s, self.x, self.y)
        ]


class _Arithmetic:
    """Scalar conversion for one precision setting."""

    def __init__(self, digits: int):
        self.extended = digits > 16
        self.digits = digits
        if self.extended:
            self.convert = mpmath.mpc
            self.real = mpmath.mpf
            self.constant = lambda q: mpmath.mpf(q.numerator) / q.denominator
            self.abs = lambda z: float(abs(z))
        else:
            self.convert = complex
            self.real = float
            self.constant = float
            self.abs = abs

    def tableau(self):
        c = [self.constant(v) for v in C]
        a = [[self.constant(v) for v in row] for row in A]
        b = [self.constant(v) for v in B5]
        e = [self.constant(v) for v in E]
        return c, a, b, e


def _initial_step(G, a, tangent, y, ar: _Arithmetic) -> float:
    f0 = tangent * G(a, y)
    d0 = ar.abs(y)
    d1 = ar.abs(f0)
    if d0 < 1e-5 or d1 < 1e-5:
        return 1e-3
    return min(1.0, 0.01 * d0 / d1)


def _check_state(y, scale: float, divides: bool, ar: _Arithmetic, x):
    magnitude = ar.abs(y)
    if not math.isfinite(magnitude):
        raise PoleEncountered(f"solution blew up near x = {complex(x)}", x=complex(x))
    if divides and magnitude < POLE_GUARD * scale:
        raise PoleEncountered(f"solution approached zero near x = {complex(x)}", x=complex(x), y=complex(y))


def integrate_along_path(
    ode: ODEField,
    path: ComplexPath,
    y0: complex,
    config: IntegratorConfig | None = None,
    record: bool = True,
) -> Trajectory:
    config = config or IntegratorConfig()
    ar = _Arithmetic(config.precision_digits)
    context = mpmath.workdps(config.precision_digits + 5) if ar.extended else _NullContext()
    with context:
        return _integrate(ode, path, y0, config, ar, record)


class _NullContext:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def _integrate(ode: ODEField, path: ComplexPath, y0, config: IntegratorConfig, ar: _Arithmetic, record: bool):
    logger.debug(
        f"Attempting {ode.kind.value} integration over {len(path.points) - 1} segments at {config.precision_digits} digits"
    )
    G = ode.rhs(ar.convert)
    c, a_tab, b, e = ar.tableau()
    y = ar.convert(y0)
    scale = ar.abs(y) if ar.abs(y) > 0 else 1.0
    divides = ode.divides_by_state
    _check_state(y, scale, divides, ar, path.start)
    trajectory = Trajectory(end_value=complex(y), precision_digits=config.precision_digits)
    steps = rejected = 0
    rel_tol, abs_tol = config.rel_tol, config.abs_tol

    for index, (start, stop) in enumerate(path.segments()):
        a = ar.convert(start)
        tangent = ar.convert(stop) - a
        length = abs(complex(stop) - complex(start))
        if length == 0:
            continue
        s = ar.real(0)
        h = ar.real(_initial_step(G, a, tangent, y, ar))
        previous_error = 1.0
        k1 = tangent * G(a, y)
        if record:
            # restart the dense output with the new tangent
            trajectory.s.append(float(index))
            trajectory.x.append(complex(a))
            trajectory.y.append(complex(y))
            trajectory.dyds.append(complex(k1))
        while s < 1.0:
            if steps + rejected >= config.max_steps:
                raise MaxStepsExceeded(
                    f"step budget {config.max_steps} exhausted", accepted=steps, rejected=rejected, s=index + s
                )
            h = min(h, 1.0 - s)
            if h * length < config.min_step:
                raise StepUnderflow(f"step fell below {config.min_step}", x=complex(a + s * tangent), step=h * length)
            try:
                k = [k1]
                for stage in range(1, 7):
                    yi = y
                    for j, coeff in enumerate(a_tab[stage]):
                        if coeff:
                            yi = yi + h * coeff * k[j]
                    xi = a + (s + c[stage] * h) * tangent
                    k.append(tangent * G(xi, yi))
                y_new = y
                for j in range(6):
                    if b[j]:
                        y_new = y_new + h * b[j] * k[j]
                error_vector = 0
                for j in range(7):
                    if e[j]:
                        error_vector = error_vector + h * e[j] * k[j]
                tolerance = abs_tol + rel_tol * max(ar.abs(y), ar.abs(y_new))
                error = ar.abs(error_vector) / tolerance
            except ZeroDivisionError:
                error = math.inf
            if not math.isfinite(error):
                rejected += 1
                h *= MIN_FACTOR
                continue
            if error <= 1.0:
                s += h
                if 1 - s < 1e-14:
                    s = ar.real(1)
                y = y_new
                k1 = k[6]
                steps += 1
                x_now = a + s * tangent
                _check_state(y, scale, divides, ar, x_now)
                if record:
                    trajectory.s.append(index + float(s))
                    trajectory.x.append(complex(x_now))
                    trajectory.y.append(complex(y))
                    trajectory.dyds.append(complex(k1))
                factor = SAFETY * max(error, 1e-10) ** -ALPHA * previous_error**BETA
                previous_error = max(error, 1e-4)
                h *= min(MAX_FACTOR, max(MIN_FACTOR, factor))
            else:
                rejected += 1
                h *= max(MIN_FACTOR, SAFETY * error**-0.2)

    trajectory.end_value = complex(y) if not ar.extended else y
    trajectory.step_count = steps
    trajectory.rejected_steps = rejected
    logger.info(f"Successfully integrated {ode.kind.value}: {steps} steps, {rejected} rejected")
    return trajectory


def order_convergence_probe(
    tolerances: list[float], eps: float = 0.1, precision_digits: int = 16
) -> list[tuple[float, float]]:
    """Relative end-point error of eps y' = -y over [0, 1], y(0) = 1, per tolerance."""
    ode = ODEField(FieldKindEnum.linear_test, eps=eps)
    path = ComplexPath.through(0, 1)
    with mpmath.workdps(precision_digits + 10):
        exact = mpmath.exp(-1 / mpmath.mpf(eps))
    results = []
    for tol in tolerances:
        config = IntegratorConfig(rel_tol=tol, abs_tol=tol * 1e-12, precision_digits=precision_digits)
        end = integrate_along_path(ode, path, 1, config, record=False).end_value
        with mpmath.workdps(precision_digits + 10):
            error = float(abs(mpmath.mpc(end) - exact) / exact)
        results.append((tol, error))
    return results
