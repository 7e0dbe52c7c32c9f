"""Relief R(x) = Re(e^{-i theta} F(x)) of a polynomial F' and the paths that descend it.

F is the closed-form antiderivative of F' normalized to vanish at the base
point, so relief values carry no quadrature error.
"""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np
from numpy.polynomial import polynomial as P

from core.errors import DegeneratePath, ReliefError, StagnationAtCol

logger = logging.getLogger(__name__)

COL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ReliefSpec:
    derivative_coefficients: tuple[complex, ...]
    base_point: complex = 0j
    theta: float = 0.0
    name: str = "custom"

    def __post_init__(self):
        coefficients = tuple(complex(c) for c in self.derivative_coefficients)
        if not any(coefficients):
            raise ReliefError("F' must not vanish identically")
        object.__setattr__(self, "derivative_coefficients", coefficients)
        object.__setattr__(self, "base_point", complex(self.base_point))

    @cached_property
    def _derivative(self) -> np.ndarray:
        return np.array(self.derivative_coefficients, dtype=complex)

    @cached_property
    def _antiderivative(self) -> np.ndarray:
        F = P.polyint(self._derivative)
        F[0] -= P.polyval(self.base_point, F)
        return F

    @cached_property
    def scale(self) -> float:
        return float(np.max(np.abs(self._derivative)))

    @property
    def rotation(self) -> complex:
        return cmath.exp(-1j * self.theta)

    def primitive(self, x):
        return P.polyval(x, self._antiderivative)

    def derivative(self, x):
        return P.polyval(x, self._derivative)

    def rotated(self, theta: float) -> ReliefSpec:
        return ReliefSpec(self.derivative_coefficients, self.base_point, theta, self.name)


def vdp_relief(theta: float = 0.0) -> ReliefSpec:
    """F'(t) = (t - 1)(t + 1)^2 from the slow curve of Van der Pol, F(1) = 0."""
    return ReliefSpec((-1, -1, 1, 1), 1, theta, "vdp")


def brusselator_relief(theta: float = 0.0) -> ReliefSpec:
    """F'(t) = 2t(1 + t), F(0) = 0."""
    return ReliefSpec((0, 2, 2), 0, theta, "brusselator")


def quadratic_relief(theta: float = 0.0) -> ReliefSpec:
    return ReliefSpec((0, 1), 0, theta, "quadratic")


SHIPPED_RELIEFS = {
    "vdp": vdp_relief,
    "brusselator": brusselator_relief,
    "quadratic": quadratic_relief,
}


def relief_spec_by_name(name: str, theta: float = 0.0) -> ReliefSpec:
    try:
        return SHIPPED_RELIEFS[name](theta)
    except KeyError:
        raise ReliefError(f"unknown relief {name!r}", known=sorted(SHIPPED_RELIEFS))


def relief_value(spec: ReliefSpec, x):
    """R at a point or (vectorized) on an array of points."""
    values = np.real(spec.rotation * spec.primitive(x))
    return float(values) if np.ndim(values) == 0 else values


def cols(spec: ReliefSpec) -> list[complex]:
    """Zeros of F', with multiple roots repeated."""
    return [complex(r) for r in P.polyroots(spec._derivative)]


# paths

@dataclass(frozen=True)
class ComplexPath:
    """Polyline through ``points``; each consecutive pair is a straight segment."""

    points: tuple[complex, ...]
    samples_per_segment: int = 64

    def __post_init__(self):
        points = tuple(complex(p) for p in self.points)
        if len(points) < 2:
            raise DegeneratePath("a path needs at least two points")
        object.__setattr__(self, "points", points)
        if self.length == 0:
            raise DegeneratePath("path has zero length", start=points[0])

    @classmethod
    def through(cls, *points: complex, samples_per_segment: int = 64) -> ComplexPath:
        return cls(tuple(points), samples_per_segment)

    @property
    def start(self) -> complex:
        return self.points[0]

    @property
    def end(self) -> complex:
        return self.points[-1]

    @property
    def length(self) -> float:
        return sum(abs(b - a) for a, b in self.segments())

    def segments(self) -> Iterable[tuple[complex, complex]]:
        return zip(self.points[:-1], self.points[1:])

    def reversed(self) -> ComplexPath:
        return ComplexPath(self.points[::-1], self.samples_per_segment)

    def conjugate(self) -> ComplexPath:
        return ComplexPath(tuple(p.conjugate() for p in self.points), self.samples_per_segment)

    def refined(self, fractions: Iterable[float] | None = None) -> ComplexPath:
        """Split every segment at the given interior fractions (midpoint by default)."""
        cuts = sorted(fractions) if fractions is not None else [0.5]
        points = [self.points[0]]
        for a, b in self.segments():
            points += [a + t * (b - a) for t in cuts if 0 < t < 1]
            points.append(b)
        return ComplexPath(tuple(points), self.samples_per_segment)

    def then(self, other: ComplexPath) -> ComplexPath:
        if abs(self.end - other.start) > 1e-12 * max(1.0, abs(self.end)):
            raise DegeneratePath("paths do not join", end=self.end, start=other.start)
        return ComplexPath(self.points + other.points[1:], self.samples_per_segment)


@dataclass(frozen=True)
class DescentCertificate:
    C: float
    worst_point: complex
    descending: bool
    col_on_path: bool = False
    samples: int = 0
    ratios: tuple[float, ...] = field(default=(), repr=False)


def descent_check(spec: ReliefSpec, path: ComplexPath, samples_per_segment: int | None = None) -> DescentCertificate:
    """Sampled infimum of (-dR/du)/|F'(gamma) gamma'| over segment midpoints.

    Sample k of n on a segment sits at u = (k + 1/2)/n, so path endpoints
    (often cols) are never evaluated.
    """
    n = samples_per_segment or path.samples_per_segment
    u = (np.arange(n) + 0.5) / n
    ratios, points = [], []
    col_on_path = False
    tolerance = COL_TOLERANCE * spec.scale
    for a, b in path.segments():
        tangent = b - a
        if tangent == 0:
            continue
        gamma = a + u * tangent
        slope = spec.derivative(gamma) * tangent
        magnitude = np.abs(slope)
        cols_here = np.abs(spec.derivative(gamma)) < tolerance
        if np.any(cols_here):
            col_on_path = True
        safe = np.where(cols_here, 1.0, magnitude)
        ratio = np.where(cols_here, 0.0, -np.real(spec.rotation * slope) / safe)
        ratios.append(ratio)
        points.append(gamma)
    ratios = np.concatenate(ratios)
    points = np.concatenate(points)
    worst = int(np.argmin(ratios))
    C = float(ratios[worst])
    if col_on_path:
        logger.warning(f"Col on path within tolerance for relief {spec.name}")
    return DescentCertificate(
        C=C,
        worst_point=complex(points[worst]),
        descending=C > 0 and not col_on_path,
        col_on_path=col_on_path,
        samples=len(ratios),
        ratios=tuple(float(r) for r in ratios),
    )


def path_integral_of_relief(spec: ReliefSpec, path: ComplexPath, nodes: int = 16) -> float:
    """Accumulated integral of Re(e^{-i theta} F' dx) by Gauss-Legendre per segment."""
    t, w = np.polynomial.legendre.leggauss(nodes)
    total = 0.0
    for a, b in path.segments():
        gamma = (a + b) / 2 + t * (b - a) / 2
        total += float(np.real(spec.rotation * np.sum(w * spec.derivative(gamma)) * (b - a) / 2))
    return total


def _descent_direction(spec: ReliefSpec, x: complex) -> complex:
    d = spec.derivative(x)
    magnitude = abs(d)
    if magnitude < COL_TOLERANCE * spec.scale:
        raise StagnationAtCol(f"|F'| vanished at {x}", point=x)
    return -complex(np.conj(spec.rotation * d)) / magnitude


def steepest_descent_path(
    spec: ReliefSpec,
    start: complex,
    target: complex | None = None,
    stop_radius: float = 1e-3,
    max_arclength: float = 100.0,
    step: float = 0.05,
    close_to_target: bool = False,
) -> ComplexPath:
    """Unit-speed descent dx/ds = -conj(e^{-i theta} F'(x))/|F'(x)|, integrated with RK4.

    Stops inside ``stop_radius`` of ``target`` or after ``max_arclength``.
    Steps never exceed half the distance left to the target.
    """
    logger.debug(f"Attempting steepest descent on {spec.name} from {start}")
    x = complex(start)
    points = [x]
    travelled = 0.0
    while travelled < max_arclength:
        if target is not None and abs(x - target) < stop_radius:
            break
        h = step
        if target is not None:
            h = min(h, 0.5 * abs(x - target))
        h = min(h, max_arclength - travelled)
        k1 = _descent_direction(spec, x)
        k2 = _descent_direction(spec, x + 0.5 * h * k1)
        k3 = _descent_direction(spec, x + 0.5 * h * k2)
        k4 = _descent_direction(spec, x + h * k3)
        x = x + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
        travelled += h
        points.append(x)
    if close_to_target and target is not None and points[-1] != target:
        points.append(complex(target))
    logger.info(f"Successfully traced {len(points) - 1} descent steps on {spec.name}")
    return ComplexPath(tuple(points))


def summit_on_arc(
    spec: ReliefSpec, radius: float, arg_range: tuple[float, float], samples: int = 2048
) -> complex:
    """Point of maximal relief on the arc |x| = radius, arg in arg_range."""
    lo, hi = arg_range
    args = np.linspace(lo, hi, samples)
    values = relief_value(spec, radius * np.exp(1j * args))
    k = int(np.argmax(values))
    a, b = args[max(k - 1, 0)], args[min(k + 1, samples - 1)]
    ratio = (math.sqrt(5) - 1) / 2
    f = lambda phi: relief_value(spec, radius * cmath.exp(1j * phi))
    for _ in range(60):
        c, d = b - ratio * (b - a), a + ratio * (b - a)
        if f(c) > f(d):
            b = d
        else:
            a = c
    return radius * cmath.exp(1j * (a + b) / 2)


# contours

# segments per marching-squares case, as pairs of cell edges:
# 0 bottom, 1 right, 2 top, 3 left; corners 0 bl, 1 br, 2 tr, 3 tl
_CASES: dict[int, tuple[tuple[int, int], ...]] = {
    1: ((3, 0),), 2: ((0, 1),), 3: ((3, 1),), 4: ((1, 2),),
    6: ((0, 2),), 7: ((3, 2),), 8: ((2, 3),), 9: ((0, 2),),
    11: ((1, 2),), 12: ((1, 3),), 13: ((0, 1),), 14: ((3, 0),),
}
_SADDLE_SPLIT = {5: (((3, 0), (1, 2)), ((0, 1), (2, 3))), 10: (((0, 1), (2, 3)), ((3, 0), (1, 2)))}


def _edge_key(i: int, j: int, edge: int) -> tuple[str, int, int]:
    return {0: ("h", i, j), 1: ("v", i + 1, j), 2: ("h", i, j + 1), 3: ("v", i, j)}[edge]


def _chain(segments: list[tuple[tuple, tuple]]) -> list[list[tuple]]:
    neighbours: dict[tuple, list[tuple]] = {}
    for a, b in segments:
        neighbours.setdefault(a, []).append(b)
        neighbours.setdefault(b, []).append(a)
    seen: set[frozenset] = set()
    chains = []
    starts = [k for k, v in neighbours.items() if len(v) == 1] + list(neighbours)
    for start in starts:
        for first in neighbours[start]:
            if frozenset((start, first)) in seen:
                continue
            chain = [start, first]
            seen.add(frozenset((start, first)))
            while True:
                tail = chain[-1]
                nxt = next((n for n in neighbours[tail] if frozenset((tail, n)) not in seen), None)
                if nxt is None:
                    break
                seen.add(frozenset((tail, nxt)))
                chain.append(nxt)
            chains.append(chain)
    return chains


def level_curves(
    spec: ReliefSpec,
    levels: Iterable[float],
    bbox: tuple[float, float, float, float],
    resolution: int = 200,
) -> list[tuple[float, list[complex]]]:
    """Marching-squares contours of R on a resolution x resolution grid over
    bbox = (xmin, xmax, ymin, ymax). Returns (level, polyline) pairs."""
    levels = list(levels)
    xmin, xmax, ymin, ymax = bbox
    if not (xmax > xmin and ymax > ymin) or resolution < 2:
        raise ReliefError("bounding box is degenerate", bbox=bbox)
    if not levels:
        return []
    xs = np.linspace(xmin, xmax, resolution)
    ys = np.linspace(ymin, ymax, resolution)
    grid = xs[:, None] + 1j * ys[None, :]
    values = relief_value(spec, grid)
    curves = []
    for level in levels:
        above = (values > level).astype(np.int64)
        index = (
            above[:-1, :-1]
            | above[1:, :-1] << 1
            | above[1:, 1:] << 2
            | above[:-1, 1:] << 3
        )
        positions: dict[tuple, complex] = {}

        def vertex(key: tuple) -> complex:
            if key not in positions:
                kind, i, j = key
                if kind == "h":
                    va, vb, pa, pb = values[i, j], values[i + 1, j], grid[i, j], grid[i + 1, j]
                else:
                    va, vb, pa, pb = values[i, j], values[i, j + 1], grid[i, j], grid[i, j + 1]
                t = (level - va) / (vb - va)
                positions[key] = complex(pa + t * (pb - pa))
            return positions[key]

        segments = []
        for i, j in zip(*np.nonzero((index != 0) & (index != 15))):
            case = int(index[i, j])
            if case in _SADDLE_SPLIT:
                centre = values[i : i + 2, j : j + 2].mean()
                pairs = _SADDLE_SPLIT[case][0 if centre <= level else 1]
            else:
                pairs = _CASES[case]
            for e0, e1 in pairs:
                segments.append((_edge_key(i, j, e0), _edge_key(i, j, e1)))
        for chain in _chain(segments):
            curves.append((level, [vertex(k) for k in chain]))
    logger.info(f"Successfully extracted {len(curves)} contour polylines for {spec.name}")
    return curves
