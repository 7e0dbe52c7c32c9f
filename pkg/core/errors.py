"""Exception hierarchy shared by the engines, the CLI and the HTTP layer.

Every error carries a short machine-readable ``code`` and a ``details`` dict so
front ends can emit a structured record without parsing messages.
"""
from typing import Any


class CanardError(Exception):
    code = "canard_error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_record(self) -> dict:
        return {
            "error": self.code,
            "message": self.message,
            "details": {key: str(value) for key, value in self.details.items()},
        }


class ConfigError(CanardError):
    code = "config_error"


class UsageError(CanardError):
    code = "usage_error"


# exact algebra

class ExactAlgebraError(CanardError):
    code = "exact_algebra_error"


class NonzeroRemainder(ExactAlgebraError):
    code = "nonzero_remainder"


class PoleMismatch(ExactAlgebraError):
    code = "pole_mismatch"


class EvalAtPole(ExactAlgebraError):
    code = "eval_at_pole"


class ZeroConstantTerm(ExactAlgebraError):
    code = "zero_constant_term"


# formal series

class FormalCanardError(CanardError):
    code = "formal_canard_error"


class DegenerateQ(FormalCanardError):
    code = "degenerate_q"


class DegenerateF(FormalCanardError):
    code = "degenerate_f"


class InsufficientPrecision(FormalCanardError):
    code = "insufficient_precision"


class TruncationTooShort(FormalCanardError):
    code = "truncation_too_short"


# relief

class ReliefError(CanardError):
    code = "relief_error"


class DegeneratePath(ReliefError):
    code = "degenerate_path"


class StagnationAtCol(ReliefError):
    code = "stagnation_at_col"


# integration

class IntegrationError(CanardError):
    code = "integration_error"


class PoleEncountered(IntegrationError):
    code = "pole_encountered"


class StepUnderflow(IntegrationError):
    code = "step_underflow"


class MaxStepsExceeded(IntegrationError):
    code = "max_steps_exceeded"


# shooting

class ShootingError(CanardError):
    code = "shooting_error"


class NoConvergence(ShootingError):
    code = "no_convergence"


class PathNotDescending(ShootingError):
    code = "path_not_descending"


# inner solutions

class InnerSolutionError(CanardError):
    code = "inner_solution_error"


class NewtonDivergence(InnerSolutionError):
    code = "newton_divergence"


class ZeroOfY0(InnerSolutionError):
    code = "zero_of_y0"


class SectorViolation(InnerSolutionError):
    code = "sector_violation"


# asymptotics

class AsymptoticsError(CanardError):
    code = "asymptotics_error"


class RankDeficient(AsymptoticsError):
    code = "rank_deficient"


class ZeroCoefficient(AsymptoticsError):
    code = "zero_coefficient"


class NoInteriorMinimum(AsymptoticsError):
    code = "no_interior_minimum"
