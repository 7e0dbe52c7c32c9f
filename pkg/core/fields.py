"""Right-hand sides dy/dx = G(x, y) of the holomorphic equations we integrate.

Every G is written with plain arithmetic so that it evaluates on Python
complex numbers and on mpmath ``mpc`` alike.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

from core.errors import UsageError
from model.FieldKindEnum import FieldKindEnum

logger = logging.getLogger(__name__)

DIVIDING_KINDS = {
    FieldKindEnum.vdp_outer,
    FieldKindEnum.vdp_inner,
    FieldKindEnum.vdp_inner_eps,
    FieldKindEnum.brusselator_outer,
    FieldKindEnum.brusselator_inner,
}
SINGULAR_KINDS = {
    FieldKindEnum.vdp_outer,
    FieldKindEnum.vdp_inner_eps,
    FieldKindEnum.brusselator_outer,
    FieldKindEnum.linear_test,
    FieldKindEnum.user_polynomial,
}


@dataclass(frozen=True)
class ODEField:
    """kind plus parameters; ``parameter`` is alpha for Van der Pol and a for the Brusselator.

    user_polynomial reads ``coefficients`` as {(i, j): c_ij} for
    eps y' = sum c_ij x^i y^j.
    """

    kind: FieldKindEnum
    eps: complex = 0.1
    parameter: complex = 1.0
    coefficients: dict[tuple[int, int], complex] = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", FieldKindEnum(self.kind))
        if self.kind in SINGULAR_KINDS and self.eps == 0:
            raise UsageError(f"{self.kind.value} needs a nonzero eps")

    @property
    def divides_by_state(self) -> bool:
        return self.kind in DIVIDING_KINDS

    def with_parameter(self, parameter) -> ODEField:
        return ODEField(self.kind, self.eps, parameter, self.coefficients)

    def rhs(self, convert: Callable = complex) -> Callable:
        """G(x, y) with eps and the parameter converted once by ``convert``."""
        eps, parameter = convert(self.eps), convert(self.parameter)
        kind = self.kind
        if kind is FieldKindEnum.vdp_outer:
            return lambda x, y: ((1 - x * x) * y + parameter - x) / (eps * y)
        if kind is FieldKindEnum.vdp_inner:
            return lambda x, y: 2 * x + 2 / y
        if kind is FieldKindEnum.vdp_inner_eps:
            # u = -1 + eps^(1/3) X, v = eps^(-1/3) Y
            cube_root = eps ** (convert(1) / 3)
            return lambda x, y: 2 * x * (1 - cube_root * x / 2) + (parameter + 1 - cube_root * x) / y
        if kind is FieldKindEnum.brusselator_outer:
            def brusselator(x, y):
                one_plus_x = 1 + x
                slow = 1 / (2 * one_plus_x**3)
                return (
                    2 * x / one_plus_x**2 * (y - slow)
                    - (parameter - 1) * y / one_plus_x**2
                    - y * (y - slow) * 2 * eps / one_plus_x
                ) / (eps * y)
            return brusselator
        if kind is FieldKindEnum.brusselator_inner:
            return lambda x, y: -2 * y / x + 1 / x**4 - 2 / x**2 + 1 / (x**5 * y)
        if kind is FieldKindEnum.linear_test:
            return lambda x, y: -y / eps
        if kind is FieldKindEnum.user_polynomial:
            terms = [(i, j, convert(c)) for (i, j), c in self.coefficients.items()]
            if not terms:
                raise UsageError("user_polynomial needs at least one coefficient")
            return lambda x, y: sum(c * x**i * y**j for i, j, c in terms) / eps
        raise UsageError(f"unsupported field kind {kind}")
