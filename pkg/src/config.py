"""Application configuration loaded from environment variables."""

from __future__ import annotations

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Central configuration for gl2frame.

    Values are loaded from ``GL2FRAME_*`` environment variables or a .env file.
    Problem files and CLI flags override the analysis defaults per run.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="GL2FRAME_",
        case_sensitive=False,
        extra="ignore",
    )

    # ── Environment ──
    environment: str = Field(default="development", description="development | production")
    log_level: str = Field(default="WARNING", description="Python logging level")
    log_format: str = Field(
        default="auto",
        description="auto | json | console; auto selects json in production",
    )

    # ── Execution ──
    workers: int = Field(
        default=1,
        ge=1,
        description="Processes for independent sample-point analyses (1 = inline)",
    )

    # ── Sampling ──
    default_samples: int = Field(default=3, ge=2, description="Flatness sample points")
    default_seed: int = Field(default=0, description="Seed for sample points and random gauges")
    sample_height: int = Field(
        default=5,
        ge=1,
        description="Bound on numerators and denominators of sampled coordinates",
    )
    sample_attempts: int = Field(
        default=25,
        ge=1,
        description="Draws allowed before giving up on an admissible sample point",
    )
    sample_zero_bias: float = Field(
        default=0.5,
        ge=0.0,
        le=1.0,
        description="Probability that a sampled coordinate is exactly zero",
    )

    # ── Parsing ──
    max_exponent: int = Field(
        default=256,
        ge=1,
        description="Largest integer exponent accepted after ^ in a right-hand side",
    )

    # ── Solver ──
    verify_depth: int = Field(
        default=3,
        ge=0,
        description="Series order at which the normalized pair is re-verified",
    )

    # ── Reports ──
    include_timings: bool = Field(
        default=False,
        description="Emit stage timings in reports (breaks byte-identical reruns)",
    )
    full_jets: bool = Field(default=False, description="Emit full torsion jets in reports")

    @property
    def json_logs(self) -> bool:
        if self.log_format == "auto":
            return self.environment == "production"
        return self.log_format == "json"


# Singleton instance, import this everywhere
settings = Settings()
