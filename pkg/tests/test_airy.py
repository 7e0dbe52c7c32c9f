import cmath
import random

import mpmath
import pytest
from scipy import special

from core.airy import MIN_CROSSOVER, _asymptotic_principal, _maclaurin, airy, airy_branch, crossover_radius

J = cmath.exp(2j * cmath.pi / 3)


def reference(z, dps=30):
    with mpmath.workdps(dps):
        return mpmath.airyai(z), mpmath.airyai(z, derivative=1)


def random_points(seed: int, count: int, radius: float):
    rng = random.Random(seed)
    return [cmath.rect(rng.uniform(0, radius), rng.uniform(-cmath.pi, cmath.pi)) for _ in range(count)]


def test_double_precision_against_mpmath():
    for z in random_points(5, 60, 14):
        ai, dai = airy(z)
        ref_ai, ref_dai = reference(z)
        scale = abs(ref_ai) + abs(ref_dai)
        assert abs(ai - complex(ref_ai)) <= 1e-12 * scale
        assert abs(dai - complex(ref_dai)) <= 1e-12 * scale


def test_extended_precision_against_mpmath():
    for z in random_points(9, 12, 20):
        ai, dai = airy(z, 40)
        ref_ai, ref_dai = reference(z, 50)
        with mpmath.workdps(50):
            scale = abs(ref_ai) + abs(ref_dai)
            assert abs(ai - ref_ai) <= mpmath.mpf(10) ** -36 * scale
            assert abs(dai - ref_dai) <= mpmath.mpf(10) ** -36 * scale


def test_agrees_with_scipy():
    for z in (0.5, -3 + 0j, 2 + 2j, -6 - 1j, 11j, -15 + 0.3j):
        ai, dai, _, _ = special.airy(complex(z))
        ours_ai, ours_dai = airy(z)
        assert ours_ai == pytest.approx(ai, rel=1e-10, abs=1e-14)
        assert ours_dai == pytest.approx(dai, rel=1e-10, abs=1e-14)


def test_connection_identity():
    for z in random_points(17, 30, 12):
        total = sum(J**k * airy_branch(z, k)[0] for k in range(3))
        scale = max(abs(airy_branch(z, k)[0]) for k in range(3))
        assert abs(total) <= 1e-12 * scale


def test_airy_equation_holds():
    h = 1e-4
    for z in random_points(23, 20, 10):
        ai, _ = airy(z, 30)
        _, dai_plus = airy(z + h, 30)
        _, dai_minus = airy(z - h, 30)
        second = (dai_plus - dai_minus) / (2 * h)
        assert abs(complex(second) - z * complex(ai)) <= 1e-6 * (abs(z * ai) + abs(dai_plus))


def test_branch_derivative_carries_rotation():
    z = 1.3 - 0.4j
    for k in range(3):
        ai, dai = airy_branch(z, k)
        plain_ai, plain_dai = airy(J**k * z)
        assert ai == pytest.approx(plain_ai, rel=1e-13)
        assert dai == pytest.approx(J**k * plain_dai, rel=1e-13)
    with pytest.raises(ValueError):
        airy_branch(z, 3)


def test_expansions_overlap_at_the_crossover():
    digits = 20
    radius = crossover_radius(digits)
    for phi in (0.0, 0.9, -1.7):
        z = cmath.rect(radius, phi)
        near = _maclaurin(z, 120)
        far = _asymptotic_principal(z, digits + 5)
        with mpmath.workdps(digits + 5):
            assert abs(near[0] - far[0]) <= mpmath.mpf(10) ** (-digits + 4) * abs(near[0])
            assert abs(near[1] - far[1]) <= mpmath.mpf(10) ** (-digits + 4) * abs(near[1])


def test_crossover_radius_grows_with_digits():
    assert crossover_radius(1) == MIN_CROSSOVER
    assert crossover_radius(16) < crossover_radius(30) < crossover_radius(60)
