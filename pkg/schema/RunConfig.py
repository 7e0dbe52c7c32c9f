from typing import List, Optional

from pydantic import BaseModel, Field

from core.config import get_settings
from model.OutputFormatEnum import OutputFormatEnum


class RunConfig(BaseModel):
    command: str = Field(..., description="Top-level subcommand")
    action: Optional[str] = Field(None, description="Second-level subcommand")
    output_format: OutputFormatEnum = Field(OutputFormatEnum.json, description="Artifact format")
    emit: Optional[str] = Field(None, description="Output path; stdout when omitted")
    fields: List[str] = Field(default_factory=list, description="Output fields to keep; all when empty")
    seed: int = Field(0, description="Seed for randomized checks")
    precision_digits: int = Field(
        default_factory=lambda: get_settings().precision_digits, ge=15, description="Working decimal digits"
    )
    jobs: int = Field(default_factory=lambda: get_settings().jobs, ge=1, description="Parallel sweep workers")

    class Config:
        from_attributes = True
