from datetime import datetime
from typing import List, Optional

from pydantic import BaseModel, Field

from schema.IntegratorConfig import IntegratorConfig

# expected Im of the parameter below which double precision cannot resolve it
EXTENDED_BELOW = 1e-8


class ShootConfig(BaseModel):
    precision_digits: Optional[int] = Field(
        None, ge=15, description="Working digits; None picks 16, or 40 when the expected Im is below 1e-8"
    )
    rel_tol: Optional[float] = Field(None, gt=0, description="Integrator tolerance; None derives it from the digits")
    max_iterations: int = Field(40, ge=2, description="Secant iteration cap")
    match_tol: Optional[float] = Field(None, gt=0, description="Accepted |mismatch|; defaults to 100 rel_tol")
    param_tol: Optional[float] = Field(None, gt=0, description="Accepted secant step; defaults to 1e-3 |expected Im|")
    mirror: bool = Field(False, description="Integrate along the complex-conjugate paths")
    initial_guess_re: Optional[float] = Field(None, description="Real part of the starting parameter")
    initial_guess_im: Optional[float] = Field(None, description="Imaginary part of the starting parameter")
    max_steps: int = Field(2_000_000, ge=1, description="Step budget of each integration")

    def digits_for(self, expected_im: float) -> int:
        if self.precision_digits is not None:
            return self.precision_digits
        return 16 if expected_im >= EXTENDED_BELOW else 40

    def integrator_for(self, expected_im: float) -> IntegratorConfig:
        """Tolerance resolves Im of the parameter to about 1e-3 of itself, and no finer."""
        digits = self.digits_for(expected_im)
        rel_tol = self.rel_tol
        if rel_tol is None:
            rel_tol = 1e-11 if digits <= 16 else max(10.0 ** (4 - digits), min(1e-12, 1e-3 * expected_im))
        return IntegratorConfig(
            rel_tol=rel_tol, abs_tol=rel_tol * 1e-3, precision_digits=digits, max_steps=self.max_steps
        )

    class Config:
        from_attributes = True


class ShootResult(BaseModel):
    family: str = Field(..., description="vdp or brusselator")
    eps: float = Field(..., gt=0, description="Small parameter")
    re_parameter: float = Field(..., description="Real part of alpha+ (vdp) or a+ (brusselator)")
    im_parameter: float = Field(..., description="Imaginary part of the canard parameter")
    parameter_text: str = Field(..., description="Full-precision rendering of the parameter")
    residual: float = Field(..., ge=0, description="|mismatch| at the returned parameter")
    iterations: int = Field(..., ge=0, description="Secant iterations used")
    precision_digits: int = Field(..., ge=15, description="Working digits of the integrations")
    stokes_observable: Optional[float] = Field(None, description="Scaled imaginary part")
    mirrored: bool = Field(False, description="Computed on the conjugate paths")

    @property
    def parameter(self) -> complex:
        return complex(self.re_parameter, self.im_parameter)

    class Config:
        from_attributes = True


class ShootRecordOutput(ShootResult):
    id: int
    created_at: datetime


class ShootSweep(BaseModel):
    results: List[ShootResult] = Field(default_factory=list, description="One row per eps")
