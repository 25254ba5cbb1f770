"""Configuration settings for hypergraph-coding using Pydantic."""

import pathlib
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

FIXTURES_DIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


class Settings(BaseSettings):
    """Main configuration settings for hypergraph-coding.

    Every field can be overridden with an environment variable prefixed by
    ``HYPERGRAPH_CODING_`` (for example ``HYPERGRAPH_CODING_SOLVER_TOL=1e-8``) or
    through a ``.env`` file in the working directory.
    """

    # Logging
    log_level: str = Field("INFO", description="Minimum level emitted by the structured logger")
    log_format: Literal["console", "json"] = Field("console", description="Renderer used for log lines")

    # Entropy solver
    solver_tol: float = Field(1e-10, gt=0, description="Stop when the objective decreases by less than this")
    solver_max_iter: int = Field(10_000, ge=1, description="Iteration cap for the alternating minimization")
    solver_seed: int = Field(0, description="Seed for the solver's initial perturbation")

    # Exponential guards
    enumeration_limit: int = Field(24, ge=1, description="Largest nx accepted by exhaustive enumerations")
    oracle_max_free_parameters: int = Field(4, ge=1, description="Largest grid the entropy oracle will sweep")

    # Polar codec
    polar_design_samples: int = Field(10_000, ge=100, description="Monte-Carlo samples per polar design")
    polar_rate_margin: float = Field(0.1, ge=0, description="Default rate margin above I(W;X)")
    polar_batch_size: int = Field(1_000, ge=1, description="Blocks processed per vectorized batch")

    # Harness
    default_seed: int = Field(0, description="Seed used when the CLI is not given one")
    fixtures_dir: pathlib.Path = Field(FIXTURES_DIR, description="Directory holding the bundled instances")

    @field_validator("log_level")
    @classmethod
    def normalize_level(cls, value: str) -> str:
        """Accept level names in any case.

        Args:
            value: Raw level name

        Returns:
            Upper-cased level name
        """
        value = value.upper()
        if value not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {value!r}")
        return value

    model_config = SettingsConfigDict(
        env_prefix="HYPERGRAPH_CODING_",
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Return the process-wide settings instance."""
    return settings
