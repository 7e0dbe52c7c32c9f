from typing import List

from pydantic import BaseModel, Field


class StokesSample(BaseModel):
    family: str = Field(..., description="vdp or brusselator")
    x: float = Field(..., description="Real inner variable X")
    y_plus_re: float = Field(..., description="Re Y0+(X)")
    y_plus_im: float = Field(..., description="Im Y0+(X)")
    diff_re: float = Field(..., description="Re (Y0+ - Y0-)(X)")
    diff_im: float = Field(..., description="Im (Y0+ - Y0-)(X)")
    formula: float = Field(..., description="Leading Stokes equivalent of Im (Y0+ - Y0-)")
    ratio: float = Field(..., description="diff_im / formula")
    precision_loss: bool = Field(False, description="Difference is within 1e3 ulp of the values")
    dps: int = Field(..., ge=15, description="mpmath digits used")

    class Config:
        from_attributes = True


class StokesReport(BaseModel):
    samples: List[StokesSample] = Field(default_factory=list)
    log_slope: float | None = Field(None, description="Fitted slope of the log-difference against the exponent variable")
