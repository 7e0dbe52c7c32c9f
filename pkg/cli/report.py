"""Acceptance report: each check is a row; a failing or crashing check never
stops the report."""
import logging
import math
from fractions import Fraction
from typing import Callable

from pydantic import BaseModel, Field

from core.asymptotics import fit_bn, probe_brusselator_constant, regression_slope
from core.errors import CanardError
from core.formal_canard import vdp_bn, vdp_coefficients, vdp_theoretical_constant
from core.inner_stokes import (
    brusselator_stokes_diff,
    exp_integral_full_line,
    stokes_log_slope,
    vdp_stokes_diff,
)
from core.normal_forms import brusselator_alpha
from core.reference_values import BN_TABLE, VDP_ALPHA_TABLE, VDP_THEORETICAL_CONSTANT
from core.shooter import find_brusselator_a, find_vdp_alpha, truncation_gap
from model.FitModelEnum import FitModelEnum

logger = logging.getLogger(__name__)


class ReportRow(BaseModel):
    check: str
    expected: str
    computed: str
    tolerance: str
    passed: bool = Field(..., description="Whether the computed value is within tolerance")


def _a_exact() -> ReportRow:
    a = vdp_coefficients(2)
    return ReportRow(
        check="a-exact",
        expected="-1/8, -3/32",
        computed=f"{a[1]}, {a[2]}",
        tolerance="exact",
        passed=a[1] == Fraction(-1, 8) and a[2] == Fraction(-3, 32),
    )


def _bn_table() -> ReportRow:
    a = vdp_coefficients(155)
    worst = max(abs(float(vdp_bn(a, n, 20)) - value) for n, value in BN_TABLE.items())
    return ReportRow(
        check="bn-table",
        expected="b_135..b_155 as tabulated",
        computed=f"max deviation {worst:.2e}",
        tolerance="5e-11",
        passed=worst <= 5e-11,
    )


def _b150() -> ReportRow:
    value = float(vdp_bn(vdp_coefficients(150), 150, 20))
    return ReportRow(
        check="b150",
        expected=f"{BN_TABLE[150]:.10f}",
        computed=f"{value:.10f}",
        tolerance="5e-11",
        passed=abs(value - BN_TABLE[150]) <= 5e-11,
    )


def _fit_bracket() -> ReportRow:
    a = vdp_coefficients(155)
    points = [(n, float(vdp_bn(a, n, 20))) for n in range(135, 156)]
    c_sqrt = fit_bn(points, FitModelEnum.inv_sqrt_n).C
    c_cbrt = fit_bn(points, FitModelEnum.inv_cbrt_n).C
    constant = float(vdp_theoretical_constant())
    return ReportRow(
        check="fit-bracket",
        expected=f"{VDP_THEORETICAL_CONSTANT} strictly between the two fits",
        computed=f"sqrt C={c_sqrt:.10f}, cbrt C={c_cbrt:.10f}",
        tolerance="bracketing",
        passed=min(c_sqrt, c_cbrt) < constant < max(c_sqrt, c_cbrt),
    )


def _vdp_stokes() -> ReportRow:
    ratios = [vdp_stokes_diff(x).ratio for x in (2.5, 3.0, 3.5)]
    trending = all(abs(r1 - 1) <= abs(r0 - 1) for r0, r1 in zip(ratios, ratios[1:]))
    return ReportRow(
        check="vdp-stokes",
        expected="ratio -> 1, within 15% at X=3.5",
        computed=", ".join(f"{r:.4f}" for r in ratios),
        tolerance="0.15",
        passed=abs(ratios[-1] - 1) < 0.15 and trending,
    )


def _vdp_shoot() -> ReportRow:
    eps = 0.20
    result = find_vdp_alpha(eps)
    expected_alpha, expected_observable = VDP_ALPHA_TABLE[eps]
    return ReportRow(
        check="vdp-shoot-0.20",
        expected=f"{expected_alpha.real:.4f}, observable {expected_observable}",
        computed=f"{result.re_parameter:.4f}, observable {result.stokes_observable:.3f}",
        tolerance="5e-4 / 0.05",
        passed=abs(result.re_parameter - expected_alpha.real) <= 5e-4
        and abs(result.stokes_observable - expected_observable) <= 0.05,
    )


def _brusselator_alpha() -> ReportRow:
    alpha = brusselator_alpha(1)
    return ReportRow(
        check="brusselator-alpha",
        expected="3/2, 15/8",
        computed=f"{alpha[0]}, {alpha[1]}",
        tolerance="exact",
        passed=alpha[0] == Fraction(3, 2) and alpha[1] == Fraction(15, 8),
    )


def _brusselator_identity() -> ReportRow:
    value = complex(exp_integral_full_line())
    target = 1j * math.sqrt(2 * math.pi)
    return ReportRow(
        check="brusselator-identity",
        expected=f"{target.imag:.10f}i",
        computed=f"{value.real:.2e}{value.imag:+.10f}i",
        tolerance="1e-8",
        passed=abs(value - target) < 1e-8,
    )


def _brusselator_stokes() -> ReportRow:
    samples = [brusselator_stokes_diff(x) for x in (2.5, 2.75, 3.0, 3.25, 3.5)]
    slope = stokes_log_slope(samples, prefactor_power=4, exponent_power=2)
    ratio = samples[2].ratio
    return ReportRow(
        check="brusselator-stokes",
        expected="slope -2, ratio 1 at X=3",
        computed=f"slope {slope:.4f}, ratio {ratio:.4f}",
        tolerance="0.05 / 0.25",
        passed=abs(slope + 2) <= 0.05 and abs(ratio - 1) <= 0.25,
    )


def _probe_brusselator() -> ReportRow:
    report = probe_brusselator_constant((1, *brusselator_alpha(29)))
    return ReportRow(
        check="probe-brusselator",
        expected="one of " + ", ".join(report.candidates),
        computed=f"limit {report.limit:.6g}, closest {report.closest}",
        tolerance="reported",
        passed=report.limit is not None,
    )


def _truncation_vs_shoot() -> ReportRow:
    gaps = {eps: truncation_gap(eps) for eps in (0.05, 0.06, 0.07, 0.08, 0.10)}
    bounded = all(gaps[eps] <= 100 * math.exp(-4 / (3 * eps)) for eps in (0.05, 0.08, 0.10))
    asymptotic = (0.05, 0.06, 0.07, 0.08)
    slope = regression_slope([1 / eps for eps in asymptotic], [math.log(gaps[eps]) for eps in asymptotic])
    return ReportRow(
        check="truncation-vs-shoot",
        expected="gap <= 100 e^(-4/(3 eps)), slope -4/3",
        computed=", ".join(f"{gaps[eps]:.2e}" for eps in (0.05, 0.08, 0.10)) + f"; slope {slope:.4f}",
        tolerance="slope in [-1.47, -1.20]",
        passed=bounded and -1.47 <= slope <= -1.20,
    )


def _brusselator_scaling() -> ReportRow:
    eps_values = (0.08, 0.09, 0.10, 0.11, 0.12)
    observables = [find_brusselator_a(eps).stokes_observable for eps in eps_values]
    slope = regression_slope([1 / eps for eps in eps_values], [math.log(obs) for obs in observables])
    return ReportRow(
        check="brusselator-scaling",
        expected="observable > 0, residual slope 0",
        computed=", ".join(f"{obs:.4f}" for obs in observables) + f"; slope {slope:.4f}",
        tolerance="10% of 2/3",
        passed=all(obs > 0 for obs in observables) and abs(slope) <= 0.1 * 2 / 3,
    )


CHECKS: dict[str, Callable[[], ReportRow]] = {
    "a-exact": _a_exact,
    "b150": _b150,
    "bn-table": _bn_table,
    "fit-bracket": _fit_bracket,
    "vdp-stokes": _vdp_stokes,
    "vdp-shoot-0.20": _vdp_shoot,
    "brusselator-alpha": _brusselator_alpha,
    "brusselator-identity": _brusselator_identity,
    "brusselator-stokes": _brusselator_stokes,
    "probe-brusselator": _probe_brusselator,
    "truncation-vs-shoot": _truncation_vs_shoot,
    "brusselator-scaling": _brusselator_scaling,
}


def run_checks(targets: list[str]) -> list[ReportRow]:
    rows = []
    for target in targets:
        check = CHECKS.get(target)
        if check is None:
            rows.append(ReportRow(check=target, expected="-", computed="unknown check", tolerance="-", passed=False))
            continue
        try:
            logger.debug(f"Attempting report check {target}")
            rows.append(check())
            logger.info(f"Successfully ran report check {target}")
        except CanardError as e:
            logger.warning(f"Report check {target} raised {e.code}: {e.message}")
            rows.append(ReportRow(check=target, expected="-", computed=f"error: {e.code}", tolerance="-", passed=False))
        except Exception as e:
            logger.error(f"Report check {target} crashed: {e}")
            rows.append(ReportRow(check=target, expected="-", computed=f"error: {e}", tolerance="-", passed=False))
    return rows


def render_markdown(rows: list[ReportRow]) -> str:
    lines = [
        "# canard-lab acceptance report",
        "",
        "| check | expected | computed | tolerance | result |",
        "|---|---|---|---|---|",
    ]
    for row in rows:
        verdict = "pass" if row.passed else "FAIL"
        lines.append(f"| {row.check} | {row.expected} | {row.computed} | {row.tolerance} | {verdict} |")
    return "\n".join(lines) + "\n"


def report(targets: list[str]) -> str:
    return render_markdown(run_checks(targets))
