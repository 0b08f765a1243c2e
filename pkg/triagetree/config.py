"""Application configuration management."""

from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide defaults, overridable through TRIAGETREE_* variables or .env."""

    # Logging
    log_level: str = "WARNING"
    log_json: bool = True

    # Reproducibility
    default_seed: int = Field(default=0, ge=0, lt=2**64)

    # Parallelism (results never depend on it)
    n_jobs: int = 1

    # Experiment defaults
    cv_folds: int = Field(default=10, ge=2)
    cv_repeats: int = Field(default=5, ge=1)
    grid_resolution: int = Field(default=100, ge=1)

    # Optional output locations
    smote_provenance_path: Optional[str] = None
    benchmark_dir: Optional[str] = None

    model_config = SettingsConfigDict(
        env_file=".env", env_prefix="TRIAGETREE_", case_sensitive=False
    )


# Global settings instance
settings = Settings()
