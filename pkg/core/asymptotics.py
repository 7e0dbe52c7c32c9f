"""Diagnostics for divergent series: Gevrey ratios, least-squares limits,
summation at the smallest term and Richardson extrapolation."""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from core.errors import NoInteriorMinimum, RankDeficient, ZeroCoefficient
from model.FitModelEnum import FitModelEnum
from schema.FitResult import FitResult, ProbeReport, SmallestTermSum

logger = logging.getLogger(__name__)

DEFAULT_FIT_RANGE = (135, 155)
PROBE_DPS = 30

_EXPONENTS = {FitModelEnum.inv_sqrt_n: 0.5, FitModelEnum.inv_cbrt_n: 1 / 3}


def _to_mpf(value):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def vdp_stokes_constant() -> float:
    """8 sqrt(2)/(sqrt(pi) e^(4/3))."""
    return 8 * math.sqrt(2) / (math.sqrt(math.pi) * math.exp(4 / 3))


def brusselator_stokes_constant() -> float:
    """64 e^(-3)."""
    return 64 * math.exp(-3)


def fit_bn(
    points: Sequence[tuple[int, float]],
    model: FitModelEnum | str = FitModelEnum.inv_sqrt_n,
    n_range: tuple[int, int] | None = None,
) -> FitResult:
    """Least squares on value = C + a n^(-1/2) or C + a n^(-1/3)."""
    model = FitModelEnum(model)
    selected = [(int(n), float(v)) for n, v in points if n_range is None or n_range[0] <= n <= n_range[1]]
    if len(selected) < 3:
        raise RankDeficient(f"need at least 3 points, got {len(selected)}", points=len(selected))
    ns = np.array([n for n, _ in selected], dtype=float)
    if len(np.unique(ns)) < 2:
        raise RankDeficient("all points share the same n")
    values = np.array([v for _, v in selected])
    design = np.vstack([np.ones_like(ns), ns ** (-_EXPONENTS[model])]).T
    coefficients, _, rank, _ = np.linalg.lstsq(design, values, rcond=None)
    if rank < 2:
        raise RankDeficient("design matrix is rank deficient", rank=rank)
    residual = values - design @ coefficients
    logger.debug(f"fit_bn {model.value}: C={coefficients[0]:.10f} a={coefficients[1]:.10f}")
    return FitResult(
        C=float(coefficients[0]),
        a=float(coefficients[1]),
        model=model,
        n_min=int(ns.min()),
        n_max=int(ns.max()),
        points=len(selected),
        residual_norm=float(np.linalg.norm(residual)),
    )


def gevrey_ratio(a: Sequence) -> list[float]:
    """r_n = |a_(n+1)| / ((n+1) |a_n|) for n = 0 .. len(a) - 2."""
    ratios = []
    for n in range(len(a) - 1):
        if a[n] == 0:
            raise ZeroCoefficient(f"a_{n} vanishes", n=n)
        if isinstance(a[n], Fraction) or isinstance(a[n + 1], Fraction):
            ratio = abs(Fraction(a[n + 1]) / Fraction(a[n]))
        else:
            ratio = abs(a[n + 1] / a[n])
        ratios.append(float(ratio) / (n + 1))
    return ratios


def sum_smallest_term(a: Sequence, eps: float, dps: int = PROBE_DPS) -> SmallestTermSum:
    """Partial sum of a_n eps^n up to, not including, the smallest term."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    with mpmath.workdps(dps):
        e = mpmath.mpf(eps)
        terms = [_to_mpf(c) * e**n for n, c in enumerate(a)]
        sizes = [abs(t) for t in terms]
        n_opt = min(range(len(sizes)), key=lambda n: sizes[n])
        if not 0 < n_opt < len(a) - 1:
            raise NoInteriorMinimum(
                f"smallest term at n={n_opt} is not interior to 0..{len(a) - 1}", eps=eps, n_opt=n_opt
            )
        total = mpmath.fsum(terms[:n_opt])
        return SmallestTermSum(
            eps=eps,
            value=float(total),
            value_text=mpmath.nstr(total, dps - 5),
            n_opt=n_opt,
            smallest_term=float(sizes[n_opt]),
        )


def richardson(sequence: Sequence, order: int, start: int = 1) -> list:
    """Richardson extrapolation over 1/n, sequence[i] being the value at n = start + i.

    R_k(n) = sum_j (-1)^(k+j) (n+j)^k s_(n+j) / (j! (k-j)!) cancels corrections up to n^-k.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    weights = [(-1) ** (order + j) / (math.factorial(j) * math.factorial(order - j)) for j in range(order + 1)]
    out = []
    for i in range(len(sequence) - order):
        n = start + i
        out.append(sum(w * (n + j) ** order * sequence[i + j] for j, w in enumerate(weights)))
    return out


def brusselator_constant_candidates() -> dict[str, float]:
    return {"54": 54.0, "108e^-3/pi": 108 * math.exp(-3) / math.pi}


def probe_brusselator_constant(a: Sequence, levels: int = 2, dps: int = PROBE_DPS) -> ProbeReport:
    """Trend of c_n = a_n / (n^2 (3/2)^n n!) and its Richardson limit.

    Reports which of the two competing closed forms the limit is nearer to;
    neither is assumed.
    """
    logger.debug(f"Attempting Brusselator constant probe on {len(a)} coefficients")
    ns, cs = [], []
    with mpmath.workdps(dps):
        for n in range(1, len(a)):
            scale = mpmath.mpf(n) ** 2 * mpmath.mpf(1.5) ** n * mpmath.factorial(n)
            ns.append(n)
            cs.append(float(_to_mpf(a[n]) / scale))
    extrapolated = richardson(cs, levels, start=ns[0]) if len(cs) > levels else []
    limit = extrapolated[-1] if extrapolated else (cs[-1] if cs else None)
    candidates = brusselator_constant_candidates()
    closest = None
    if limit is not None:
        closest = min(candidates, key=lambda name: abs(limit - candidates[name]) / candidates[name])
    logger.info(f"Successfully probed the Brusselator constant: limit={limit} closest={closest}")
    return ProbeReport(
        n=ns, c_n=cs, extrapolated=[float(x) for x in extrapolated], limit=limit, candidates=candidates, closest=closest
    )


def regression_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of ys against xs."""
    x = np.asarray(xs, dtype=float)
    design = np.vstack([x, np.ones_like(x)]).T
    slope, _ = np.linalg.lstsq(design, np.asarray(ys, dtype=float), rcond=None)[0]
    return float(slope)
