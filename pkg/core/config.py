import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from core.errors import ConfigError

load_dotenv()


class Settings(BaseModel):
    precision_digits: int = Field(16, ge=15, description="Default working precision of integrations")
    bn_bits: int = Field(120, ge=53, description="Mantissa bits used to evaluate b_n")
    database_url: str = Field("sqlite:///./canard_cache.db", description="SQLAlchemy URL of the series cache")
    log_file: str = Field("canard.log", description="Log file written by the CLI and the API")
    log_level: str = Field("DEBUG", description="Root log level")
    jobs: int = Field(1, ge=1, description="Default number of parallel sweep workers")


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}", variable=name, value=raw)


@lru_cache
def get_settings() -> Settings:
    try:
        return Settings(
            precision_digits=_int_from_env("CANARD_PRECISION", 16),
            bn_bits=_int_from_env("CANARD_BN_BITS", 120),
            database_url=os.getenv("CANARD_DATABASE_URL", "sqlite:///./canard_cache.db"),
            log_file=os.getenv("CANARD_LOG_FILE", "canard.log"),
            log_level=os.getenv("CANARD_LOG_LEVEL", "DEBUG"),
            jobs=_int_from_env("CANARD_JOBS", os.cpu_count() or 1),
        )
    except ConfigError:
        raise
    except Exception as e:
        raise ConfigError(f"Invalid environment configuration: {e}")
