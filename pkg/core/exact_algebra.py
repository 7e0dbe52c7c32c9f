"""Exact rational, polynomial, pole-restricted rational-function and
truncated power-series arithmetic.

All values are immutable. Rationals are ``fractions.Fraction`` (always reduced,
positive denominator, zero stored as 0/1). Products of dense polynomials and
series clear denominators first and convolve plain integers, which keeps the
degree-500 products of the Van der Pol recurrence affordable.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from numbers import Rational
from typing import Iterable, Literal, Sequence

import numpy as np

from core.errors import EvalAtPole, ExactAlgebraError, NonzeroRemainder, PoleMismatch, ZeroConstantTerm

logger = logging.getLogger(__name__)

ExactRational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_rational(value: int | Fraction | str) -> Fraction:
    """Coerce an int, a Fraction or a "num/den" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot build an exact rational from {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    return str(value)


# integer kernels

def integer_convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) == 1:
        return [a[0] * c for c in b]
    if len(b) == 1:
        return [b[0] * c for c in a]
    product = np.convolve(np.array(a, dtype=object), np.array(b, dtype=object))
    return [int(c) for c in product.tolist()]


def integer_divide_linear(coefficients: Sequence[int], root: int) -> tuple[list[int], int]:
    """Synthetic division by (u - root) of an integer polynomial, lowest degree
    first. Returns (quotient, remainder)."""
    if not coefficients:
        return [], 0
    degree = len(coefficients) - 1
    quotient = [0] * degree
    carry = 0
    for k in range(degree, 0, -1):
        carry = coefficients[k] + carry * root
        quotient[k - 1] = carry
    remainder = coefficients[0] + carry * root
    return quotient, remainder


def clear_denominators(coefficients: Sequence[Fraction]) -> tuple[list[int], int]:
    """Return integers c_k and a common denominator d with coefficients = c_k/d."""
    if not coefficients:
        return [], 1
    common = 1
    for c in coefficients:
        common = lcm(common, c.denominator)
    return [c.numerator * (common // c.denominator) for c in coefficients], common


def _rational_convolve(a: Sequence[Fraction], b: Sequence[Fraction], limit: int | None = None) -> list[Fraction]:
    if limit is not None:
        a = a[:limit]
        b = b[:limit]
    ints_a, den_a = clear_denominators(a)
    ints_b, den_b = clear_denominators(b)
    product = integer_convolve(ints_a, ints_b)
    if limit is not None:
        product = product[:limit]
    den = den_a * den_b
    return [Fraction(c, den) for c in product]


# dense polynomials

@dataclass(frozen=True)
class DensePolynomial:
    """Polynomial with exact coefficients, lowest degree first. The zero
    polynomial has an empty coefficient tuple."""

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self):
        coefficients = [to_rational(c) for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def constant(cls, value) -> DensePolynomial:
        return cls((to_rational(value),))

    @classmethod
    def linear(cls, root) -> DensePolynomial:
        """The monic factor (u - root)."""
        return cls((-to_rational(root), _ONE))

    @classmethod
    def power_of_linear(cls, root, exponent: int) -> DensePolynomial:
        """(u - root)**exponent expanded by the binomial theorem."""
        root = to_rational(root)
        return cls(tuple(comb(exponent, k) * (-root) ** (exponent - k) for k in range(exponent + 1)))

    @classmethod
    def from_scaled_integers(cls, coefficients: Sequence[int], denominator: int) -> DensePolynomial:
        return cls(tuple(Fraction(c, denominator) for c in coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, point):
        acc = _ZERO if isinstance(point, Rational) else 0
        for c in reversed(self.coefficients):
            acc = acc * point + c
        return acc

    def __neg__(self) -> DensePolynomial:
        return DensePolynomial(tuple(-c for c in self.coefficients))

    def __add__(self, other: DensePolynomial) -> DensePolynomial:
        if not isinstance(other, DensePolynomial):
            return NotImplemented
        longer, shorter = (self.coefficients, other.coefficients)
        if len(shorter) > len(longer):
            longer, shorter = shorter, longer
        merged = list(longer)
        for k, c in enumerate(shorter):
            merged[k] += c
        return DensePolynomial(tuple(merged))

    def __sub__(self, other: DensePolynomial) -> DensePolynomial:
        if not isinstance(other, DensePolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> DensePolynomial:
        if isinstance(other, DensePolynomial):
            if self.is_zero() or other.is_zero():
                return DensePolynomial()
            return DensePolynomial(tuple(_rational_convolve(self.coefficients, other.coefficients)))
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, factor) -> DensePolynomial:
        factor = to_rational(factor)
        return DensePolynomial(tuple(factor * c for c in self.coefficients))

    def derivative(self) -> DensePolynomial:
        return DensePolynomial(tuple(k * c for k, c in enumerate(self.coefficients) if k > 0))

    def scaled_integers(self) -> tuple[list[int], int]:
        return clear_denominators(self.coefficients)

    def __repr__(self) -> str:
        return f"DensePolynomial({[str(c) for c in self.coefficients]})"


def poly_arith(a: DensePolynomial, b: DensePolynomial, op: Literal["add", "sub", "mul"]) -> DensePolynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_div_exact_linear(p: DensePolynomial, root) -> DensePolynomial:
    """Exact quotient of p by (u - root). The remainder must vanish."""
    root = to_rational(root)
    if p.is_zero():
        return DensePolynomial()
    integers, denominator = p.scaled_integers()
    # scale so that the root is an integer: substitute u = t / q
    q = root.denominator
    if q == 1:
        quotient, remainder = integer_divide_linear(integers, root.numerator)
        if remainder != 0:
            raise NonzeroRemainder(
                f"polynomial does not vanish at {root}", value=Fraction(remainder, denominator), root=root
            )
        return DensePolynomial.from_scaled_integers(quotient, denominator)
    degree = p.degree
    quotient: list[Fraction] = [_ZERO] * degree
    carry = _ZERO
    for k in range(degree, 0, -1):
        carry = p.coefficients[k] + carry * root
        quotient[k - 1] = carry
    remainder = p.coefficients[0] + carry * root
    if remainder != 0:
        raise NonzeroRemainder(f"polynomial does not vanish at {root}", value=remainder, root=root)
    return DensePolynomial(tuple(quotient))


# rational functions with a single pole

@dataclass(frozen=True)
class PoleRationalFunction:
    """numerator(u) / (u - pole_location)**pole_order, kept fully reduced."""

    numerator: DensePolynomial
    pole_location: Fraction
    pole_order: int = 0

    def __post_init__(self):
        if self.pole_order < 0:
            raise ExactAlgebraError("pole order must be nonnegative", pole_order=self.pole_order)
        location = to_rational(self.pole_location)
        numerator = self.numerator
        order = self.pole_order
        if numerator.is_zero():
            order = 0
        while order > 0 and numerator(location) == 0:
            numerator = poly_div_exact_linear(numerator, location)
            order -= 1
        object.__setattr__(self, "pole_location", location)
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "pole_order", order)

    @classmethod
    def from_polynomial(cls, polynomial: DensePolynomial, pole_location) -> PoleRationalFunction:
        return cls(polynomial, to_rational(pole_location), 0)

    def _check_pole(self, other: PoleRationalFunction):
        if self.pole_location != other.pole_location:
            raise PoleMismatch(
                "rational functions have different pole locations",
                left=self.pole_location,
                right=other.pole_location,
            )

    def raised_to(self, order: int) -> DensePolynomial:
        """Numerator over the common denominator (u - c)**order, order >= pole_order."""
        extra = order - self.pole_order
        if extra == 0:
            return self.numerator
        return self.numerator * DensePolynomial.power_of_linear(self.pole_location, extra)

    def __neg__(self) -> PoleRationalFunction:
        return PoleRationalFunction(-self.numerator, self.pole_location, self.pole_order)

    def __add__(self, other: PoleRationalFunction) -> PoleRationalFunction:
        self._check_pole(other)
        order = max(self.pole_order, other.pole_order)
        return PoleRationalFunction(self.raised_to(order) + other.raised_to(order), self.pole_location, order)

    def __sub__(self, other: PoleRationalFunction) -> PoleRationalFunction:
        return self + (-other)

    def __mul__(self, other) -> PoleRationalFunction:
        if isinstance(other, PoleRationalFunction):
            self._check_pole(other)
            return PoleRationalFunction(
                self.numerator * other.numerator, self.pole_location, self.pole_order + other.pole_order
            )
        if isinstance(other, (int, Fraction)):
            return PoleRationalFunction(self.numerator.scale(other), self.pole_location, self.pole_order)
        return NotImplemented

    __rmul__ = __mul__

    def derivative(self) -> PoleRationalFunction:
        # (N/(u-c)^m)' = (N'(u-c) - m N)/(u-c)^(m+1)
        if self.pole_order == 0:
            return PoleRationalFunction(self.numerator.derivative(), self.pole_location, 0)
        shifted = self.numerator.derivative() * DensePolynomial.linear(self.pole_location)
        return PoleRationalFunction(
            shifted - self.numerator.scale(self.pole_order), self.pole_location, self.pole_order + 1
        )

    def evaluate(self, point) -> Fraction:
        point = to_rational(point)
        if self.pole_order > 0 and point == self.pole_location:
            raise EvalAtPole(f"cannot evaluate at the pole {point}", pole=self.pole_location)
        return self.numerator(point) / (point - self.pole_location) ** self.pole_order

    def __repr__(self) -> str:
        return f"PoleRationalFunction({self.numerator!r} / (u - {self.pole_location})^{self.pole_order})"


def ratfunc_arith(a: PoleRationalFunction, b: PoleRationalFunction, op: Literal["add", "mul"]) -> PoleRationalFunction:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown rational function operation {op!r}")


def ratfunc_derivative(a: PoleRationalFunction) -> PoleRationalFunction:
    return a.derivative()


def ratfunc_eval(a: PoleRationalFunction, u0) -> Fraction:
    return a.evaluate(u0)


# truncated power series in x

@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 x + ... + c_N x^N, with everything of order > N dropped.
    Mixed-order arithmetic returns the smaller truncation order."""

    coefficients: tuple[Fraction, ...]
    truncation_order: int

    def __post_init__(self):
        if self.truncation_order < 0:
            raise ExactAlgebraError("truncation order must be nonnegative", order=self.truncation_order)
        size = self.truncation_order + 1
        coefficients = [to_rational(c) for c in self.coefficients[:size]]
        coefficients.extend([_ZERO] * (size - len(coefficients)))
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls((), order)

    @classmethod
    def constant(cls, value, order: int) -> TruncatedSeries:
        return cls((to_rational(value),), order)

    @classmethod
    def from_polynomial(cls, polynomial: DensePolynomial, order: int) -> TruncatedSeries:
        return cls(polynomial.coefficients, order)

    @classmethod
    def from_coefficients(cls, coefficients: Iterable, order: int) -> TruncatedSeries:
        return cls(tuple(to_rational(c) for c in coefficients), order)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None for the zero series."""
        for k, c in enumerate(self.coefficients):
            if c != 0:
                return k
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def truncate(self, order: int) -> TruncatedSeries:
        return TruncatedSeries(self.coefficients, min(order, self.truncation_order))

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(tuple(-c for c in self.coefficients), self.truncation_order)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = min(self.truncation_order, other.truncation_order)
        return TruncatedSeries(
            tuple(a + b for a, b in zip(self.coefficients[: order + 1], other.coefficients[: order + 1])), order
        )

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            order = min(self.truncation_order, other.truncation_order)
            if self.is_zero() or other.is_zero():
                return TruncatedSeries.zero(order)
            return TruncatedSeries(tuple(_rational_convolve(self.coefficients, other.coefficients, order + 1)), order)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, factor) -> TruncatedSeries:
        factor = to_rational(factor)
        return TruncatedSeries(tuple(factor * c for c in self.coefficients), self.truncation_order)

    def derivative(self) -> TruncatedSeries:
        """d/dx; one order of accuracy is lost."""
        if self.truncation_order == 0:
            raise ExactAlgebraError("cannot differentiate a series truncated at order 0")
        return TruncatedSeries(
            tuple(k * c for k, c in enumerate(self.coefficients) if k > 0), self.truncation_order - 1
        )

    def shift_down(self, k: int) -> TruncatedSeries:
        """Divide by x^k. The first k coefficients must vanish."""
        if k == 0:
            return self
        if k > self.truncation_order:
            raise ExactAlgebraError("shift exceeds the truncation order", shift=k, order=self.truncation_order)
        if any(c != 0 for c in self.coefficients[:k]):
            raise NonzeroRemainder(f"series is not divisible by x^{k}", shift=k)
        return TruncatedSeries(self.coefficients[k:], self.truncation_order - k)

    def shift_up(self, k: int) -> TruncatedSeries:
        """Multiply by x^k at the same truncation order."""
        return TruncatedSeries((_ZERO,) * k + self.coefficients, self.truncation_order)

    def polynomial_part(self, degree: int | None = None) -> DensePolynomial:
        stop = self.truncation_order if degree is None else min(degree, self.truncation_order)
        return DensePolynomial(self.coefficients[: stop + 1])

    def __call__(self, point):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * point + c
        return acc

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(c) for c in self.coefficients]}, N={self.truncation_order})"


def series_div(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    """Quotient q with q*den = num modulo x^(N+1), N the smaller order."""
    order = min(num.truncation_order, den.truncation_order)
    d0 = den.coefficients[0]
    if d0 == 0:
        raise ZeroConstantTerm("series divisor has zero constant term")
    inverse = 1 / d0
    quotient: list[Fraction] = []
    for k in range(order + 1):
        acc = num.coefficients[k]
        for j in range(max(0, k - den.truncation_order), k):
            dk = den.coefficients[k - j]
            if dk:
                acc -= quotient[j] * dk
        quotient.append(acc * inverse)
    return TruncatedSeries(tuple(quotient), order)


def rational_series(numerator: DensePolynomial, denominator: DensePolynomial, order: int) -> TruncatedSeries:
    """x-expansion of numerator/denominator (denominator nonzero at 0)."""
    return series_div(
        TruncatedSeries.from_polynomial(numerator, order), TruncatedSeries.from_polynomial(denominator, order)
    )


# bi-series in (epsilon, x)

@dataclass(frozen=True)
class TruncatedBiSeries:
    """sum_n c_n(x) eps^n, n <= N_eps, each c_n a TruncatedSeries of order N_x."""

    eps_coefficients: tuple[TruncatedSeries, ...]

    def __post_init__(self):
        terms = tuple(self.eps_coefficients)
        if not terms:
            raise ExactAlgebraError("a bi-series needs at least one epsilon coefficient")
        orders = {t.truncation_order for t in terms}
        if len(orders) != 1:
            raise ExactAlgebraError("all epsilon coefficients must share the x truncation order", orders=sorted(orders))
        object.__setattr__(self, "eps_coefficients", terms)

    @classmethod
    def from_x_series(cls, series: TruncatedSeries, eps_order: int) -> TruncatedBiSeries:
        zero = TruncatedSeries.zero(series.truncation_order)
        return cls((series,) + (zero,) * eps_order)

    @classmethod
    def zero(cls, eps_order: int, x_order: int) -> TruncatedBiSeries:
        return cls((TruncatedSeries.zero(x_order),) * (eps_order + 1))

    @property
    def eps_order(self) -> int:
        return len(self.eps_coefficients) - 1

    @property
    def x_order(self) -> int:
        return self.eps_coefficients[0].truncation_order

    def coefficient(self, n: int) -> TruncatedSeries:
        if 0 <= n <= self.eps_order:
            return self.eps_coefficients[n]
        return TruncatedSeries.zero(self.x_order)

    def __add__(self, other: TruncatedBiSeries) -> TruncatedBiSeries:
        size = min(len(self.eps_coefficients), len(other.eps_coefficients))
        return TruncatedBiSeries(tuple(self.eps_coefficients[k] + other.eps_coefficients[k] for k in range(size)))

    def __sub__(self, other: TruncatedBiSeries) -> TruncatedBiSeries:
        return self + other.scale(-1)

    def scale(self, factor) -> TruncatedBiSeries:
        return TruncatedBiSeries(tuple(t.scale(factor) for t in self.eps_coefficients))

    def __mul__(self, other: TruncatedBiSeries) -> TruncatedBiSeries:
        size = min(len(self.eps_coefficients), len(other.eps_coefficients))
        x_order = min(self.x_order, other.x_order)
        terms = []
        for n in range(size):
            acc = TruncatedSeries.zero(x_order)
            for k in range(n + 1):
                left, right = self.eps_coefficients[k], other.eps_coefficients[n - k]
                if not left.is_zero() and not right.is_zero():
                    acc = acc + left * right
            terms.append(acc)
        return TruncatedBiSeries(tuple(terms))

    def shift_eps(self, k: int = 1) -> TruncatedBiSeries:
        """Multiply by eps^k at the same epsilon order."""
        zero = TruncatedSeries.zero(self.x_order)
        return TruncatedBiSeries(((zero,) * k + self.eps_coefficients)[: len(self.eps_coefficients)])

    def x_derivative(self) -> TruncatedBiSeries:
        return TruncatedBiSeries(tuple(t.derivative() for t in self.eps_coefficients))

    def truncate_x(self, order: int) -> TruncatedBiSeries:
        return TruncatedBiSeries(tuple(t.truncate(order) for t in self.eps_coefficients))
