from typing import List

from pydantic import BaseModel, Field, field_validator


class PathRequest(BaseModel):
    spec: str = Field("vdp", description="Shipped relief name: vdp, brusselator or quadratic")
    theta: float = Field(0.0, description="Rotation angle of the relief")
    points_re: List[float] = Field(..., min_length=2, description="Real parts of the path vertices")
    points_im: List[float] = Field(..., min_length=2, description="Imaginary parts of the path vertices")
    samples_per_segment: int = Field(64, ge=2, description="Sampling density of the descent check")

    @field_validator("points_im")
    @classmethod
    def _same_length(cls, value, info):
        if len(value) != len(info.data.get("points_re", [])):
            raise ValueError("points_re and points_im must have the same length")
        return value

    @property
    def points(self) -> list[complex]:
        return [complex(x, y) for x, y in zip(self.points_re, self.points_im)]


class DescentCertificateSchema(BaseModel):
    C: float = Field(..., description="Sampled infimum of -dR/ds / |F' dx/ds|; positive means strictly descending")
    worst_re: float = Field(..., description="Re of the sample where C is attained")
    worst_im: float = Field(..., description="Im of the sample where C is attained")
    descending: bool = Field(..., description="C > 0 and no col on the path")
    col_on_path: bool = Field(False, description="A col of the relief lies on the path")
    samples: int = Field(0, ge=0, description="Number of sampled points")

    @classmethod
    def from_certificate(cls, certificate) -> "DescentCertificateSchema":
        return cls(
            C=certificate.C,
            worst_re=certificate.worst_point.real,
            worst_im=certificate.worst_point.imag,
            descending=certificate.descending,
            col_on_path=certificate.col_on_path,
            samples=certificate.samples,
        )

    class Config:
        from_attributes = True


class ReliefValue(BaseModel):
    spec: str
    re: float
    im: float
    value: float = Field(..., description="R(x)")
