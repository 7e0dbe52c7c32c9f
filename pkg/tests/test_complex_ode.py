import math
import random

import pytest

from core.complex_ode import integrate_along_path, order_convergence_probe
from core.errors import MaxStepsExceeded, PoleEncountered, StepUnderflow, UsageError
from core.fields import ODEField
from core.relief import ComplexPath
from model.FieldKindEnum import FieldKindEnum
from schema.IntegratorConfig import IntegratorConfig

CASES = 50


def random_linear_field(rng: random.Random) -> ODEField:
    def coefficient():
        return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))

    return ODEField(
        FieldKindEnum.user_polynomial,
        eps=1,
        coefficients={(0, 1): coefficient(), (1, 1): coefficient(), (0, 0): coefficient()},
    )


def random_path(rng: random.Random) -> ComplexPath:
    points = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(rng.randint(2, 4))]
    return ComplexPath.through(*points)


def test_linear_decay_matches_closed_form():
    ode = ODEField(FieldKindEnum.linear_test, eps=0.1)
    trajectory = integrate_along_path(ode, ComplexPath.through(0, 1), 1, IntegratorConfig(rel_tol=1e-10))
    assert trajectory.end_value.real == pytest.approx(math.exp(-10), rel=1e-7)
    assert abs(trajectory.end_value.imag) < 1e-15
    assert trajectory.step_count > 0


def test_vdp_outer_follows_the_slow_curve():
    ode = ODEField(FieldKindEnum.vdp_outer, eps=0.1, parameter=1)
    path = ComplexPath.through(9, 1)
    end = integrate_along_path(ode, path, -0.1, IntegratorConfig(rel_tol=1e-10)).end_value
    tighter = integrate_along_path(ode, path, -0.1, IntegratorConfig(rel_tol=1e-12)).end_value
    assert end.real == pytest.approx(-0.509, abs=0.02)
    assert abs(end - tighter) < 1e-8


def test_path_refinement_does_not_move_the_end_value():
    rng = random.Random(314)
    config = IntegratorConfig(rel_tol=1e-11, abs_tol=1e-14)
    for _ in range(CASES):
        ode = random_linear_field(rng)
        path = random_path(rng)
        y0 = complex(rng.uniform(0.5, 2), rng.uniform(-1, 1))
        coarse = integrate_along_path(ode, path, y0, config, record=False).end_value
        fine = integrate_along_path(ode, path.refined([rng.uniform(0.1, 0.9)]), y0, config, record=False).end_value
        assert abs(coarse - fine) <= 1e-9 * max(1, abs(coarse))


def test_integration_is_reversible():
    rng = random.Random(2718)
    config = IntegratorConfig(rel_tol=1e-11, abs_tol=1e-14)
    for _ in range(CASES):
        ode = random_linear_field(rng)
        path = random_path(rng)
        y0 = complex(rng.uniform(0.5, 2), rng.uniform(-1, 1))
        there = integrate_along_path(ode, path, y0, config, record=False).end_value
        back = integrate_along_path(ode, path.reversed(), there, config, record=False).end_value
        assert abs(back - y0) <= 1e-9 * max(1, abs(y0), abs(there))


def test_extended_precision_certifies_the_double_run():
    ode = ODEField(FieldKindEnum.vdp_outer, eps=0.1, parameter=1)
    path = ComplexPath.through(9, 1)
    double = integrate_along_path(ode, path, -0.1, IntegratorConfig(rel_tol=1e-12), record=False)
    extended = integrate_along_path(
        ode, path, -0.1, IntegratorConfig(rel_tol=1e-16, abs_tol=1e-24, precision_digits=30), record=False
    )
    assert extended.precision_digits == 30
    assert abs(double.end_value - complex(extended.end_value)) < 1e-9


def test_dense_output_satisfies_the_equation():
    ode = ODEField(FieldKindEnum.vdp_outer, eps=0.1, parameter=1)
    trajectory = integrate_along_path(ode, ComplexPath.through(9, 1), -0.1, IntegratorConfig(rel_tol=1e-10))
    G = ode.rhs()
    for k in range(0, len(trajectory.s) - 1, max(1, len(trajectory.s) // 10)):
        s = (trajectory.s[k] + trajectory.s[k + 1]) / 2
        delta = 1e-5 * (trajectory.s[k + 1] - trajectory.s[k])
        derivative = (trajectory.evaluate(s + delta) - trajectory.evaluate(s - delta)) / (2 * delta)
        expected = -8 * G(9 - 8 * s, trajectory.evaluate(s))
        assert abs(derivative - expected) <= 1e-3 * abs(expected)


def test_trajectory_rows_carry_the_samples():
    ode = ODEField(FieldKindEnum.linear_test, eps=1)
    trajectory = integrate_along_path(ode, ComplexPath.through(0, 1j), 1)
    rows = trajectory.rows()
    assert rows[0]["x_re"] == 0 and rows[0]["y_re"] == 1
    assert rows[-1]["x_im"] == pytest.approx(1)
    assert len(rows) == trajectory.step_count + 1


def test_order_probe_respects_tolerances():
    results = order_convergence_probe([1e-4, 1e-6, 1e-8])
    tol, error = results[1]
    assert tol == 1e-6
    assert error <= 1e-4
    for (_, coarse), (_, fine) in zip(results, results[1:]):
        assert fine <= 10 * coarse + 1e-13


def test_order_probe_in_extended_precision():
    [(_, error)] = order_convergence_probe([1e-10], precision_digits=30)
    assert error <= 1e-8


def test_dividing_field_refuses_zero_state():
    ode = ODEField(FieldKindEnum.vdp_outer, eps=0.1, parameter=1)
    with pytest.raises(PoleEncountered):
        integrate_along_path(ode, ComplexPath.through(9, 1), 0)


def test_step_budget_and_underflow():
    ode = ODEField(FieldKindEnum.linear_test, eps=0.1)
    path = ComplexPath.through(0, 1)
    with pytest.raises(MaxStepsExceeded):
        integrate_along_path(ode, path, 1, IntegratorConfig(max_steps=5))
    with pytest.raises(StepUnderflow):
        integrate_along_path(ode, path, 1, IntegratorConfig(min_step=10))


def test_singular_fields_need_eps():
    with pytest.raises(UsageError):
        ODEField(FieldKindEnum.vdp_outer, eps=0)
    with pytest.raises(UsageError):
        ODEField(FieldKindEnum.user_polynomial).rhs()


def test_config_rejects_tolerance_below_precision():
    with pytest.raises(ValueError):
        IntegratorConfig(rel_tol=1e-20, precision_digits=16)
