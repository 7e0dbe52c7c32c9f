"""Formal canard series.

* ``vdp_series``: the exact Van der Pol recurrence. With v_n = N_n/(u+1)^(3n+1)
  every product v_j v_(n-j) lands on the common denominator (u+1)^(3n+2), so the
  whole step reduces to integer polynomial convolutions plus one exact
  synthetic division by (u - 1).
* ``canard_formal``: coefficient matching for equations in the normal form
  eps y' = (x^p f + eps g) y + h + eps y^2 P(x, eps, eps y) + alpha Q(x, eps, eps y),
  where each order fixes a_n(x) by series division against Q(x, 0, 0).
* ``vdp_bn`` / ``vdp_theoretical_constant``: log-domain big-float diagnostics.
"""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm

import mpmath

from core.config import get_settings
from core.errors import (
    DegenerateF,
    DegenerateQ,
    FormalCanardError,
    InsufficientPrecision,
    NonzeroRemainder,
    TruncationTooShort,
)
from core.exact_algebra import (
    DensePolynomial,
    PoleRationalFunction,
    TruncatedBiSeries,
    TruncatedSeries,
    integer_convolve,
    integer_divide_linear,
    series_div,
)

logger = logging.getLogger(__name__)

VDP_POLE = Fraction(-1)
MAX_BN_DIGITS = 5000


@dataclass(frozen=True)
class VdpSeries:
    a: tuple[Fraction, ...]
    v: tuple[PoleRationalFunction, ...]

    @property
    def order(self) -> int:
        return len(self.a) - 1


class _VdpRecurrence:
    """Growing state of the integer recurrence, shared behind a lock."""

    def __init__(self):
        self.lock = threading.Lock()
        self.numerators: list[list[int]] = [[-1]]
        self.denominators: list[int] = [1]
        self.a: list[Fraction] = [Fraction(1)]

    @property
    def order(self) -> int:
        return len(self.a) - 1

    def extend(self, N: int):
        with self.lock:
            while self.order < N:
                self._step()

    def _step(self):
        n = self.order
        nums, dens = self.numerators, self.denominators
        # A_n = sum_j N_j N_(n-j), symmetric in j
        common = 1
        for j in range(n // 2 + 1):
            common = lcm(common, dens[j] * dens[n - j])
        width = max(3 * n, 1)
        acc = [0] * width
        for j in range(n // 2 + 1):
            k = n - j
            product = integer_convolve(nums[j], nums[k])
            weight = (common // (dens[j] * dens[k])) * (1 if j == k else 2)
            for idx, c in enumerate(product):
                acc[idx] += weight * c
        # numerator of (v^2)'/2 over (u+1)^(3n+3), times 2*common
        shift = 3 * n + 2
        b = []
        for k in range(width):
            term = (k - shift) * acc[k]
            if k + 1 < width:
                term += (k + 1) * acc[k + 1]
            b.append(term)
        scale = 2 * common
        power = 3 * n + 3
        a_next = Fraction(sum(b), scale * 2**power)
        # N_(n+1) (u - 1) = -(b/scale - a_next (u+1)^power)
        den = lcm(scale, a_next.denominator)
        left = den // scale
        right = (den // a_next.denominator) * a_next.numerator
        combined = [0] * (power + 1)
        for k, c in enumerate(b):
            combined[k] += left * c
        for k in range(power + 1):
            combined[k] -= right * comb(power, k)
        quotient, remainder = integer_divide_linear(combined, 1)
        if remainder != 0:
            raise NonzeroRemainder("Van der Pol recurrence left a remainder at u = 1", order=n + 1)
        quotient = [-c for c in quotient]
        while len(quotient) > 1 and quotient[-1] == 0:
            quotient.pop()
        g = den
        for c in quotient:
            g = gcd(g, c)
            if g == 1:
                break
        self.numerators.append([c // g for c in quotient])
        self.denominators.append(den // g)
        self.a.append(a_next)

    def v(self, n: int) -> PoleRationalFunction:
        numerator = DensePolynomial.from_scaled_integers(self.numerators[n], self.denominators[n])
        return PoleRationalFunction(numerator, VDP_POLE, 3 * n + 1)


_RECURRENCE = _VdpRecurrence()


def vdp_coefficients(N: int) -> tuple[Fraction, ...]:
    """a_0..a_N without materializing the v_n."""
    if N < 0:
        raise FormalCanardError("series order must be nonnegative", N=N)
    if _RECURRENCE.order < N:
        logger.debug(f"Attempting to extend the Van der Pol recurrence from {_RECURRENCE.order} to {N}")
        _RECURRENCE.extend(N)
        logger.info(f"Successfully extended the Van der Pol recurrence to order {N}")
    return tuple(_RECURRENCE.a[: N + 1])


def vdp_series(N: int) -> VdpSeries:
    a = vdp_coefficients(N)
    return VdpSeries(a=a, v=tuple(_RECURRENCE.v(n) for n in range(N + 1)))


def vdp_recurrence_defect(series: VdpSeries, n: int) -> Fraction:
    """(sum_j v_j v'_(n-j) - a_(n+1)) at u = 1, computed with rational-function
    arithmetic independently of the integer kernel. Zero when the series is right."""
    total = PoleRationalFunction(DensePolynomial(), VDP_POLE, 0)
    for j in range(n + 1):
        total = total + series.v[j] * series.v[n - j].derivative()
    constant = PoleRationalFunction(DensePolynomial.constant(series.a[n + 1]), VDP_POLE, 0)
    return (total - constant).evaluate(1)


def _digits_or_default(digits: int | None) -> int:
    if digits is None:
        return int(get_settings().bn_bits * 0.30103) + 1
    if digits < 1 or digits > MAX_BN_DIGITS:
        raise InsufficientPrecision(
            f"requested {digits} digits, supported range is 1..{MAX_BN_DIGITS}", digits=digits
        )
    return digits


def scaled_log_magnitude(value: Fraction, n: int, digits: int):
    """ln|value| + n ln(4e/(3n)) from the exact integers, in mpmath."""
    with mpmath.workdps(digits + 15):
        log_magnitude = mpmath.log(mpmath.mpf(abs(value.numerator))) - mpmath.log(mpmath.mpf(value.denominator))
        return log_magnitude + n * (mpmath.log(4) + 1 - mpmath.log(3) - mpmath.log(n))


def vdp_bn(series: VdpSeries | tuple[Fraction, ...], n: int, digits: int | None = None):
    """b_n = a_n (4e/(3n))^n with at least ``digits`` significant figures."""
    a = series.a if isinstance(series, VdpSeries) else series
    if n < 1 or n >= len(a):
        raise FormalCanardError(f"b_n needs 1 <= n <= {len(a) - 1}", n=n)
    digits = _digits_or_default(digits)
    value = a[n]
    if value == 0:
        return mpmath.mpf(0)
    with mpmath.workdps(digits + 15):
        magnitude = mpmath.exp(scaled_log_magnitude(value, n, digits))
        result = magnitude if value > 0 else -magnitude
    return result


def vdp_theoretical_constant(digits: int = 30):
    """-4 sqrt(3) / (pi e^(4/3)), the limit of b_n."""
    with mpmath.workdps(digits + 10):
        value = -4 * mpmath.sqrt(3) / (mpmath.pi * mpmath.exp(mpmath.mpf(4) / 3))
    return value


# generic construction

@dataclass(frozen=True)
class NormalFormProblem:
    """eps y' = (x^p f(x) + eps g) y + h + eps y^2 P(x, eps, w) + alpha Q(x, eps, w), w = eps y.

    P and Q are given as the bi-series coefficients of w^0, w^1, ...; a
    ``*_polynomial_in_w`` flag states that the omitted higher powers are zero.
    """

    p: int
    f: TruncatedSeries
    g: TruncatedBiSeries
    h: TruncatedBiSeries
    P_w_powers: tuple[TruncatedBiSeries, ...]
    Q_w_powers: tuple[TruncatedBiSeries, ...]
    eps_order: int
    x_order: int
    p_polynomial_in_w: bool = False
    q_polynomial_in_w: bool = False
    name: str = "custom"


@dataclass(frozen=True)
class CanardFormalSolution:
    y: tuple[TruncatedSeries, ...]
    a: tuple[DensePolynomial, ...]
    raw_numerators: tuple[TruncatedSeries, ...] = field(repr=False)
    q00: TruncatedSeries = field(repr=False)
    p: int = 1

    def numerator(self, n: int) -> TruncatedSeries:
        """Order-n numerator after subtracting a_n Q(x, 0, 0)."""
        raw = self.raw_numerators[n]
        return raw - TruncatedSeries.from_polynomial(self.a[n], raw.truncation_order) * self.q00

    def constants(self) -> tuple[Fraction, ...]:
        return tuple(a_n.coefficients[0] if not a_n.is_zero() else Fraction(0) for a_n in self.a)


def minimum_x_order(p: int, eps_order: int) -> int:
    return (eps_order + 1) * (p + 1) - 1


def _validate(problem: NormalFormProblem):
    if problem.p < 1:
        raise FormalCanardError("turning-point order p must be positive", p=problem.p)
    if problem.f.coefficients[0] == 0:
        raise DegenerateF("f has zero constant term")
    if not problem.Q_w_powers or problem.Q_w_powers[0].coefficient(0).coefficients[0] == 0:
        raise DegenerateQ("Q(0, 0, 0) vanishes")
    needed = minimum_x_order(problem.p, problem.eps_order)
    if problem.x_order < needed:
        raise TruncationTooShort(
            f"x order {problem.x_order} too short for {problem.eps_order} epsilon orders (need {needed})",
            x_order=problem.x_order,
            needed=needed,
        )
    inputs = [problem.f.truncation_order, problem.g.x_order, problem.h.x_order]
    inputs += [s.x_order for s in problem.P_w_powers + problem.Q_w_powers]
    if min(inputs) < problem.x_order:
        raise TruncationTooShort("input series are truncated below the requested x order", inputs=inputs)
    if not problem.p_polynomial_in_w and len(problem.P_w_powers) < problem.eps_order:
        raise TruncationTooShort(
            "P needs one w-power per epsilon order", supplied=len(problem.P_w_powers), needed=problem.eps_order
        )
    if not problem.q_polynomial_in_w and len(problem.Q_w_powers) < problem.eps_order + 1:
        raise TruncationTooShort(
            "Q needs one w-power per epsilon order", supplied=len(problem.Q_w_powers), needed=problem.eps_order + 1
        )


def _sum(terms: list[TruncatedSeries], order: int) -> TruncatedSeries:
    acc = TruncatedSeries.zero(order)
    for t in terms:
        acc = acc + t
    return acc


def canard_formal(problem: NormalFormProblem) -> CanardFormalSolution:
    _validate(problem)
    logger.debug(f"Attempting formal canard construction for {problem.name} to order {problem.eps_order}")
    p, Nx = problem.p, problem.x_order
    f = problem.f.truncate(Nx)
    q00 = problem.Q_w_powers[0].coefficient(0).truncate(Nx)

    y: list[TruncatedSeries] = []
    a: list[DensePolynomial] = []
    raw: list[TruncatedSeries] = []
    # powers[m][j] = [eps^j] (eps Y)^m, for j >= m
    powers: list[dict[int, TruncatedSeries]] = [{0: TruncatedSeries.constant(1, Nx)}]
    y_squared: list[TruncatedSeries] = []
    z_p: list[TruncatedSeries] = []
    z_q: list[TruncatedSeries] = [q00]

    def composite(coeffs: tuple[TruncatedBiSeries, ...], j: int) -> TruncatedSeries:
        terms = []
        for m, cm in enumerate(coeffs):
            if m > j:
                break
            for i in range(j - m + 1):
                data = cm.coefficient(i)
                power = powers[m].get(j - i)
                if power is not None and not data.is_zero() and not power.is_zero():
                    terms.append(data * power)
        return _sum(terms, Nx)

    for n in range(problem.eps_order + 1):
        if n >= 1:
            latest = y[n - 1]
            powers.append({})
            for m in range(1, n + 1):
                if m == 1:
                    powers[1][n] = latest
                    continue
                terms = [y[i - 1] * powers[m - 1][n - i] for i in range(1, n - m + 2) if (n - i) in powers[m - 1]]
                powers[m][n] = _sum(terms, Nx)
            y_squared.append(_sum([y[i] * y[n - 1 - i] for i in range(n)], Nx))
            z_p.append(composite(problem.P_w_powers, n - 1))
            z_q.append(composite(problem.Q_w_powers, n))

            terms = [latest.derivative()]
            terms += [-(problem.g.coefficient(k) * y[n - 1 - k]) for k in range(n)]
            terms.append(-problem.h.coefficient(n))
            terms += [-(y_squared[i] * z_p[n - 1 - i]) for i in range(n)]
            for k in range(n):
                a_series = TruncatedSeries.from_polynomial(a[k], Nx)
                terms.append(-(a_series * z_q[n - k]))
            remainder = _sum(terms, Nx)
        else:
            remainder = -problem.h.coefficient(0).truncate(Nx)

        ratio = series_div(remainder, q00)
        a_n = ratio.polynomial_part(p - 1)
        numerator = remainder - TruncatedSeries.from_polynomial(a_n, remainder.truncation_order) * q00
        valuation = numerator.valuation()
        if valuation is not None and valuation < p:
            raise FormalCanardError("order numerator kept a low-order term after subtracting a_n Q", order=n)
        y_n = series_div(numerator.shift_down(p), f)
        raw.append(remainder)
        a.append(a_n)
        y.append(y_n)

    logger.info(f"Successfully built {len(y)} formal canard orders for {problem.name}")
    return CanardFormalSolution(y=tuple(y), a=tuple(a), raw_numerators=tuple(raw), q00=q00, p=p)


def _bi_from_terms(terms: list[TruncatedSeries], eps_order: int, x_order: int) -> TruncatedBiSeries:
    series = [t.truncate(x_order) for t in terms[: eps_order + 1]]
    series += [TruncatedSeries.zero(x_order)] * (eps_order + 1 - len(series))
    return TruncatedBiSeries(tuple(series))


def canard_residual(problem: NormalFormProblem, solution: CanardFormalSolution) -> TruncatedBiSeries:
    """eps Y' minus the right-hand side of the normal form, with Y and alpha the
    truncated formal solution. Every retained coefficient should be zero."""
    Ne = problem.eps_order
    common = min(t.truncation_order for t in solution.y)
    if common < 1:
        raise TruncationTooShort("formal solution too short to evaluate a residual", order=common)
    Nx = common
    Y = _bi_from_terms(list(solution.y), Ne, Nx)
    alpha = _bi_from_terms([TruncatedSeries.from_polynomial(a_n, Nx) for a_n in solution.a], Ne, Nx)
    w = Y.shift_eps(1)
    xp_f = TruncatedBiSeries.from_x_series(problem.f.truncate(Nx).shift_up(problem.p), Ne)

    def fit(bi: TruncatedBiSeries) -> TruncatedBiSeries:
        return _bi_from_terms([bi.coefficient(k) for k in range(Ne + 1)], Ne, Nx)

    def compose(coeffs: tuple[TruncatedBiSeries, ...]) -> TruncatedBiSeries:
        acc = TruncatedBiSeries.zero(Ne, Nx)
        for cm in reversed(coeffs):
            acc = acc * w + fit(cm)
        return acc

    lhs = Y.x_derivative().shift_eps(1)
    rhs = xp_f * Y + (fit(problem.g) * Y).shift_eps(1) + fit(problem.h)
    rhs = rhs + (Y * Y * compose(problem.P_w_powers)).shift_eps(1)
    rhs = rhs + alpha * compose(problem.Q_w_powers)
    return (lhs - rhs.truncate_x(Nx - 1)).truncate_x(Nx - 1)
