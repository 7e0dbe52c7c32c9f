from pydantic import BaseModel, Field, model_validator

from core.config import get_settings


class IntegratorConfig(BaseModel):
    rel_tol: float = Field(1e-10, gt=0, description="Relative local error tolerance")
    abs_tol: float = Field(1e-14, gt=0, description="Absolute local error tolerance")
    precision_digits: int = Field(
        default_factory=lambda: get_settings().precision_digits,
        ge=15,
        description="Working decimal digits; hardware complex up to 16, mpmath beyond",
    )
    max_steps: int = Field(200000, ge=1, description="Accepted plus rejected step budget")
    min_step: float = Field(1e-14, gt=0, description="Smallest allowed step, measured as arclength")

    @model_validator(mode="after")
    def _tolerance_within_precision(self):
        if self.rel_tol < 10.0 ** (-self.precision_digits):
            raise ValueError(f"rel_tol {self.rel_tol} is below the resolution of {self.precision_digits} digits")
        return self

    @property
    def extended(self) -> bool:
        return self.precision_digits > 16

    class Config:
        from_attributes = True
