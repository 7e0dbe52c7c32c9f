from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from model.FitModelEnum import FitModelEnum


class FitResult(BaseModel):
    C: float = Field(..., description="Fitted limit")
    a: float = Field(..., description="Coefficient of the n^(-1/2) or n^(-1/3) correction")
    model: FitModelEnum = Field(..., description="Correction model")
    n_min: int = Field(..., ge=1, description="First index used")
    n_max: int = Field(..., description="Last index used")
    points: int = Field(..., ge=3, description="Number of data points used")
    residual_norm: float = Field(..., ge=0, description="Euclidean norm of the fit residuals")

    @model_validator(mode="after")
    def _range_is_ordered(self):
        if self.n_max <= self.n_min:
            raise ValueError("n_max must exceed n_min")
        return self

    class Config:
        from_attributes = True


class SmallestTermSum(BaseModel):
    eps: float = Field(..., gt=0)
    value: float = Field(..., description="Partial sum truncated before the smallest term")
    value_text: str = Field(..., description="Partial sum at full working precision")
    n_opt: int = Field(..., ge=1, description="Index of the smallest term")
    smallest_term: float = Field(..., ge=0, description="|a_n_opt eps^n_opt|")


class ProbeReport(BaseModel):
    n: List[int] = Field(default_factory=list, description="Indices of the probed coefficients")
    c_n: List[float] = Field(default_factory=list, description="a_n / (n^2 (3/2)^n n!)")
    extrapolated: List[float] = Field(default_factory=list, description="Richardson values over 1/n")
    limit: Optional[float] = Field(None, description="Last extrapolated value")
    candidates: Dict[str, float] = Field(default_factory=dict, description="Competing closed-form constants")
    closest: Optional[str] = Field(None, description="Candidate the extrapolated limit is nearest to, in relative terms")
