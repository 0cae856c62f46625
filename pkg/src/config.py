"""
Configuration Module
Solver settings read from the environment and overridden by command line flags
"""
import logging
import os
from typing import Optional

from pydantic import BaseModel, Field, field_validator

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class SolverSettings(BaseModel):
    grid_cap: int = Field(default=1_000_000, ge=1)
    seed: int = Field(default=0, ge=0)
    sample_count: int = Field(default=25, ge=0)
    log_level: str = "INFO"

    @field_validator("log_level")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        level = v.strip().upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(LOG_LEVELS)}")
        return level

    @classmethod
    def from_env(cls, environ: Optional[dict] = None) -> "SolverSettings":
        """Settings from MAXMIN_* variables; unset variables keep their defaults"""
        environ = os.environ if environ is None else environ
        values = {}
        for name in ("grid_cap", "seed", "sample_count", "log_level"):
            raw = environ.get(f"MAXMIN_{name.upper()}")
            if raw is not None:
                values[name] = raw
        if values:
            logger.debug(f"Settings taken from environment: {sorted(values)}")
        return cls(**values)

    def with_overrides(self, **overrides) -> "SolverSettings":
        """Copy with every non-None override applied and validated"""
        values = self.model_dump()
        values.update({key: value for key, value in overrides.items() if value is not None})
        return SolverSettings(**values)
