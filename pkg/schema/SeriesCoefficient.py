from typing import List

from pydantic import BaseModel, Field


class SeriesCoefficientSchema(BaseModel):
    family: str = Field(..., description="vdp or brusselator")
    n: int = Field(..., ge=0, description="Order of the coefficient")
    value: str = Field(..., description="Exact rational as num/den")

    class Config:
        from_attributes = True


class SeriesResponse(BaseModel):
    family: str
    a: List[str] = Field(default_factory=list, description="Exact coefficients a_0..a_N")


class BnResponse(BaseModel):
    digits: int = Field(..., ge=1)
    b: dict[int, str] = Field(default_factory=dict, description="b_n rendered to the requested digits")
