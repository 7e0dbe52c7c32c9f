import cmath
import math
import random

import numpy as np
import pytest

from core.errors import DegeneratePath, ReliefError, StagnationAtCol
from core.relief import (
    ComplexPath,
    ReliefSpec,
    brusselator_relief,
    cols,
    descent_check,
    level_curves,
    path_integral_of_relief,
    quadratic_relief,
    relief_spec_by_name,
    relief_value,
    steepest_descent_path,
    summit_on_arc,
    vdp_relief,
)


def test_relief_values_at_the_other_col():
    assert relief_value(vdp_relief(), -1) == pytest.approx(4 / 3, abs=1e-14)
    assert relief_value(brusselator_relief(), -1) == pytest.approx(1 / 3, abs=1e-14)


def test_relief_vanishes_at_base_point():
    for spec in (vdp_relief(), brusselator_relief(), quadratic_relief(0.7)):
        assert relief_value(spec, spec.base_point) == pytest.approx(0, abs=1e-14)


def test_rotation_turns_real_into_imaginary_part():
    spec = quadratic_relief(math.pi / 2)
    x = 1 + 2j
    assert relief_value(spec, x) == pytest.approx((x * x / 2).imag)


def test_relief_is_vectorized():
    spec = vdp_relief()
    points = np.array([0, 2 + 1j, -1])
    values = relief_value(spec, points)
    assert values.shape == (3,)
    assert values[2] == pytest.approx(4 / 3)


def test_cols_of_vdp_relief():
    roots = sorted(cols(vdp_relief()), key=lambda z: z.real)
    assert roots[0] == pytest.approx(-1, abs=1e-6)
    assert roots[1] == pytest.approx(-1, abs=1e-6)
    assert roots[2] == pytest.approx(1, abs=1e-12)


def test_zero_derivative_is_rejected():
    with pytest.raises(ReliefError):
        ReliefSpec((0, 0))
    with pytest.raises(ReliefError):
        relief_spec_by_name("lorenz")


def test_relief_is_harmonic_on_random_circles():
    rng = random.Random(11)
    spec = vdp_relief(0.3)
    radius = 0.1
    circle = radius * np.exp(2j * np.pi * np.arange(64) / 64)
    for _ in range(50):
        centre = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        mean = float(np.mean(relief_value(spec, centre + circle)))
        assert mean == pytest.approx(relief_value(spec, centre), abs=1e-9 * max(1, abs(mean)))


def test_relief_is_path_independent():
    spec = vdp_relief(-0.4)
    end = 2.5 - 1.5j
    direct = ComplexPath.through(1, end)
    detour = ComplexPath.through(1, 3j, -2 + 1j, end)
    expected = relief_value(spec, end)
    assert path_integral_of_relief(spec, direct) == pytest.approx(expected, rel=1e-10)
    assert path_integral_of_relief(spec, detour) == pytest.approx(expected, rel=1e-10)


def test_east_segment_descends_and_its_reverse_climbs():
    spec = vdp_relief()
    east = ComplexPath.through(9, 1)
    down = descent_check(spec, east)
    up = descent_check(spec, east.reversed())
    assert down.descending
    assert down.C == pytest.approx(1)
    assert not up.descending
    assert up.C < 0
    assert down.samples == 64


def test_north_path_descends():
    certificate = descent_check(vdp_relief(), ComplexPath.through(-1 + 10j, 0, 1))
    assert certificate.descending
    assert certificate.C > 0
    assert not certificate.col_on_path


def test_path_through_a_col_is_flagged():
    # midpoint sample of the single segment lands exactly on the col at 0
    certificate = descent_check(quadratic_relief(), ComplexPath.through(-1, 1), samples_per_segment=1)
    assert certificate.col_on_path
    assert not certificate.descending


def test_quadratic_steepest_descent_runs_along_real_axis():
    spec = quadratic_relief()
    path = steepest_descent_path(spec, 2, target=0, stop_radius=1e-3)
    assert abs(path.end) < 1e-3
    assert all(abs(p.imag) < 1e-12 for p in path.points)
    values = [relief_value(spec, p) for p in path.points]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] == pytest.approx(0, abs=1e-6)


def test_vdp_steepest_descent_reaches_the_col_monotonically():
    spec = vdp_relief()
    path = steepest_descent_path(spec, 9, target=1, stop_radius=1e-3)
    assert abs(path.end - 1) < 1e-3
    values = [relief_value(spec, p) for p in path.points]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_steepest_descent_certifies_itself():
    spec = quadratic_relief(0.2)
    path = steepest_descent_path(spec, 1 + 2j, max_arclength=3)
    assert path.length == pytest.approx(3, rel=1e-2)
    assert descent_check(spec, path, samples_per_segment=4).C >= 0.9


def test_steepest_descent_from_a_col_stagnates():
    with pytest.raises(StagnationAtCol):
        steepest_descent_path(vdp_relief(), 1)


def test_summit_on_arc_is_a_maximum():
    spec = vdp_relief()
    summit = summit_on_arc(spec, 10, (math.pi / 2, math.pi))
    for phi in np.linspace(math.pi / 2, math.pi, 50):
        assert relief_value(spec, 10 * cmath.exp(1j * phi)) <= relief_value(spec, summit) + 1e-6


def test_zero_level_of_quadratic_relief_is_the_diagonals():
    curves = level_curves(quadratic_relief(), [0.0], (-1, 1, -1, 1), resolution=101)
    assert curves
    cell = 2 / 100
    for level, polyline in curves:
        assert level == 0.0
        for z in polyline:
            assert abs(abs(z.real) - abs(z.imag)) <= cell


def test_brusselator_contour_passes_through_minus_one():
    curves = level_curves(brusselator_relief(), [1 / 3], (-2, 1, -1.5, 1.5), resolution=301)
    closest = min(abs(z + 1) for _, polyline in curves for z in polyline)
    assert closest < 0.05


def test_contour_vertices_sit_on_their_level():
    spec = vdp_relief()
    cell = 6 / 199
    # linear interpolation error along one edge, with |F''| <= 64 on the box
    bound = cell**2 / 8 * 64
    for level, polyline in level_curves(spec, [0.5, 4 / 3], (-3, 3, -3, 3)):
        for z in polyline:
            assert abs(relief_value(spec, z) - level) <= bound


def test_contour_edge_cases():
    assert level_curves(vdp_relief(), [], (-1, 1, -1, 1)) == []
    with pytest.raises(ReliefError):
        level_curves(vdp_relief(), [0.0], (1, 1, -1, 1))


def test_path_operations():
    path = ComplexPath.through(0, 1, 1 + 1j)
    assert path.length == pytest.approx(2)
    assert path.reversed().start == 1 + 1j
    assert path.conjugate().end == 1 - 1j
    refined = path.refined([0.25, 0.5])
    assert len(refined.points) == 7
    assert refined.length == pytest.approx(2)
    joined = path.then(ComplexPath.through(1 + 1j, 2j))
    assert joined.end == 2j
    with pytest.raises(DegeneratePath):
        path.then(ComplexPath.through(5, 6))


def test_degenerate_paths_are_rejected():
    with pytest.raises(DegeneratePath):
        ComplexPath.through(1)
    with pytest.raises(DegeneratePath):
        ComplexPath.through(2j, 2j)
