"""Canard parameters by matching two relief-descending integrations at the col.

The mismatch m(p) = y_A(match; p) - y_B(match; p) is holomorphic in the
parameter p, so a complex secant iteration drives it to zero.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import mpmath

from core.asymptotics import brusselator_stokes_constant, sum_smallest_term, vdp_stokes_constant
from core.complex_ode import integrate_along_path
from core.errors import NoConvergence, PathNotDescending, UsageError
from core.fields import ODEField
from core.formal_canard import vdp_coefficients
from core.normal_forms import brusselator_slow_value
from core.relief import (
    ComplexPath,
    DescentCertificate,
    ReliefSpec,
    brusselator_relief,
    descent_check,
    steepest_descent_path,
    summit_on_arc,
    vdp_relief,
)
from model.FieldKindEnum import FieldKindEnum
from schema.IntegratorConfig import IntegratorConfig
from schema.ShootResult import ShootConfig, ShootResult

logger = logging.getLogger(__name__)

VDP_NORTH = (ComplexPath.through(-1 + 10j, 0, 1), 0.1j)
VDP_EAST = (ComplexPath.through(9, 1), -0.1 + 0j)


def expected_imaginary_part(family: str, eps: float) -> float:
    """Leading Stokes equivalent of Im of the canard parameter."""
    if family == "vdp":
        return 0.5 * vdp_stokes_constant() * math.exp(-4 / (3 * eps)) / math.sqrt(eps)
    if family == "brusselator":
        return 0.5 * brusselator_stokes_constant() * math.exp(-2 / (3 * eps)) / eps**3
    raise UsageError(f"unknown family {family!r}", family=family)


def vdp_stokes_observable(eps: float, result: ShootResult) -> float:
    return 2 * result.im_parameter * math.exp(4 / (3 * eps)) * math.sqrt(eps)


def brusselator_stokes_observable(eps: float, result: ShootResult) -> float:
    return 2 * result.im_parameter * math.exp(2 / (3 * eps)) * eps**3


@dataclass(frozen=True)
class ShootProblem:
    family: str
    ode: ODEField
    path_a: ComplexPath
    y_a0: complex
    path_b: ComplexPath
    y_b0: complex
    guess: complex
    relief: ReliefSpec

    @property
    def match_point(self) -> complex:
        return self.path_a.end

    def mirrored(self) -> ShootProblem:
        return ShootProblem(
            self.family,
            self.ode,
            self.path_a.conjugate(),
            complex(self.y_a0).conjugate(),
            self.path_b.conjugate(),
            complex(self.y_b0).conjugate(),
            complex(self.guess).conjugate(),
            self.relief,
        )


def certify(problem: ShootProblem) -> tuple[DescentCertificate, DescentCertificate]:
    if abs(problem.path_a.end - problem.path_b.end) > 1e-12:
        raise PathNotDescending("paths must end at the same match point", a=problem.path_a.end, b=problem.path_b.end)
    certificates = []
    for name, path in (("A", problem.path_a), ("B", problem.path_b)):
        certificate = descent_check(problem.relief, path)
        if not certificate.descending:
            raise PathNotDescending(
                f"path {name} does not descend the relief", C=certificate.C, worst_point=certificate.worst_point
            )
        certificates.append(certificate)
    return certificates[0], certificates[1]


def _mismatch(problem: ShootProblem, parameter, config: IntegratorConfig):
    ode = problem.ode.with_parameter(parameter)
    end_a = integrate_along_path(ode, problem.path_a, problem.y_a0, config, record=False).end_value
    end_b = integrate_along_path(ode, problem.path_b, problem.y_b0, config, record=False).end_value
    return end_a - end_b


def shoot(problem: ShootProblem, eps: float, config: ShootConfig) -> ShootResult:
    """Secant iteration on the canard parameter; see ShootConfig for the stopping rule."""
    certify(problem)
    expected = expected_imaginary_part(problem.family, eps)
    integrator = config.integrator_for(expected)
    match_tol = config.match_tol or 100 * integrator.rel_tol
    param_tol = config.param_tol or max(1e-3 * expected, 10 * integrator.rel_tol)
    digits = integrator.precision_digits
    guess = problem.guess
    if config.initial_guess_re is not None or config.initial_guess_im is not None:
        guess = complex(
            guess.real if config.initial_guess_re is None else config.initial_guess_re,
            guess.imag if config.initial_guess_im is None else config.initial_guess_im,
        )
    logger.debug(f"Attempting {problem.family} shoot at eps={eps} with {digits} digits")
    with mpmath.workdps(max(digits, 16) + 5):
        p0 = mpmath.mpc(guess)
        p1 = p0 + mpmath.mpf(eps) ** 3
        m0 = _mismatch(problem, p0, integrator)
        m1 = _mismatch(problem, p1, integrator)
        for iteration in range(1, config.max_iterations + 1):
            if abs(m1) <= match_tol:
                break
            if m1 == m0:
                raise NoConvergence("secant denominator vanished", iteration=iteration, parameter=complex(p1))
            step = m1 * (p1 - p0) / (m1 - m0)
            p0, m0 = p1, m1
            p1 = p1 - step
            m1 = _mismatch(problem, p1, integrator)
            logger.debug(f"secant {iteration}: |m|={float(abs(m1)):.3e} |step|={float(abs(step)):.3e}")
            if abs(step) <= param_tol and abs(m1) <= 100 * match_tol:
                break
        else:
            logger.error(f"{problem.family} shoot at eps={eps} did not converge, |m|={float(abs(m1)):.3e}")
            raise NoConvergence(
                f"no convergence after {config.max_iterations} secant steps",
                residual=float(abs(m1)),
                parameter=complex(p1),
            )
        parameter_text = mpmath.nstr(p1, max(digits, 16))
        result = ShootResult(
            family=problem.family,
            eps=eps,
            re_parameter=float(p1.real),
            im_parameter=float(p1.imag),
            parameter_text=parameter_text,
            residual=float(abs(m1)),
            iterations=iteration,
            precision_digits=digits,
            mirrored=config.mirror,
        )
    observable = vdp_stokes_observable if problem.family == "vdp" else brusselator_stokes_observable
    result.stokes_observable = observable(eps, result)
    logger.info(f"Successfully shot {problem.family} at eps={eps}: {parameter_text}")
    return result


def vdp_problem(eps: float, north=VDP_NORTH, east=VDP_EAST) -> ShootProblem:
    """Paths N = [-1+10i -> 0 -> 1] with v = i/10 and E = [9 -> 1] with v = -1/10."""
    return ShootProblem(
        family="vdp",
        ode=ODEField(FieldKindEnum.vdp_outer, eps=eps),
        path_a=north[0],
        y_a0=north[1],
        path_b=east[0],
        y_b0=east[1],
        guess=complex(1 - eps / 8 - 3 * eps**2 / 32),
        relief=vdp_relief(),
    )


def find_vdp_alpha(eps: float, config: ShootConfig | None = None, north=VDP_NORTH, east=VDP_EAST) -> ShootResult:
    config = config or ShootConfig()
    problem = vdp_problem(eps, north, east)
    if config.mirror:
        problem = problem.mirrored()
    return shoot(problem, eps, config)


def brusselator_paths(
    summit_radius: float = 2.0, ridge_point: float = -0.5, east_start: float = 1.5
) -> dict[str, tuple[ComplexPath, DescentCertificate]]:
    """East path [east_start -> 0], the north path summit -> ridge -> col 0,
    and its mirror image the south path.

    The north summit maximizes the relief on the upper-left arc of
    |x| = summit_radius; from the ridge point a steepest descent runs to within
    1e-3 of the col and a straight segment closes it. The relief has real
    coefficients, so the south path descends wherever the north one does.
    """
    relief = brusselator_relief()
    east = ComplexPath.through(east_start, 0)
    summit = summit_on_arc(relief, summit_radius, (math.pi / 2, math.pi))
    descent = steepest_descent_path(relief, ridge_point, target=0, stop_radius=1e-3, close_to_target=True)
    north = ComplexPath.through(summit, ridge_point).then(descent)
    south = north.conjugate()
    return {
        "east": (east, descent_check(relief, east)),
        "north": (north, descent_check(relief, north)),
        "south": (south, descent_check(relief, south)),
    }


def brusselator_problem(eps: float, **path_settings) -> ShootProblem:
    """a+ (Im a+ > 0) from the south and east paths; the north path gives the conjugate a-."""
    paths = brusselator_paths(**path_settings)
    south, east = paths["south"][0], paths["east"][0]
    return ShootProblem(
        family="brusselator",
        ode=ODEField(FieldKindEnum.brusselator_outer, eps=eps),
        path_a=south,
        y_a0=brusselator_slow_value(south.start, eps),
        path_b=east,
        y_b0=brusselator_slow_value(east.start, eps),
        guess=complex(1 + 1.5 * eps + 1.875 * eps**2 + 10.125 * eps**3),
        relief=brusselator_relief(),
    )


def find_brusselator_a(eps: float, config: ShootConfig | None = None, **path_settings) -> ShootResult:
    config = config or ShootConfig()
    problem = brusselator_problem(eps, **path_settings)
    if config.mirror:
        problem = problem.mirrored()
    return shoot(problem, eps, config)


def truncation_gap(eps: float, config: ShootConfig | None = None, order: int = 80) -> float:
    """|Van der Pol series summed at its smallest term - Re alpha+| at eps."""
    summed = sum_smallest_term(vdp_coefficients(order), eps)
    shot = find_vdp_alpha(eps, config)
    gap = abs(summed.value - shot.re_parameter)
    logger.info(f"Successfully compared truncation and shooting at eps={eps}: gap={gap:.3e} n_opt={summed.n_opt}")
    return gap
