"""Runtime settings: seeds, sample budgets, search bounds and logging."""

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

_LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "NOTICE", "WARNING", "ERROR", "FATAL")


class Settings(BaseSettings):
    """Settings read from ``POISSON_BV_*`` environment variables or a .env file."""

    model_config = SettingsConfigDict(
        env_prefix="POISSON_BV_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Randomized suites
    default_seed: int = 20240917
    identity_samples: int = 100
    max_coefficient_degree: int = 3

    # Searches and tables
    witness_max_degree: int = 6
    strand_workers: int = 1  # >1 evaluates strands in a process pool

    # Rewriting
    rewrite_depth_limit: int = 400

    # Observability
    logfire_token: str | None = None
    log_level: str = "WARNING"

    # App
    environment: str = "development"
    version: str = "0.1.0"

    @field_validator("identity_samples")
    @classmethod
    def validate_identity_samples(cls, v: int) -> int:
        """Validate the per-identity sample count."""
        if v < 1:
            msg = "identity_samples must be at least 1"
            raise ValueError(msg)
        if v > 10_000:
            msg = "identity_samples should not exceed 10000"
            raise ValueError(msg)
        return v

    @field_validator("max_coefficient_degree")
    @classmethod
    def validate_max_coefficient_degree(cls, v: int) -> int:
        """Validate the coefficient degree of random instances."""
        if v < 0:
            msg = "max_coefficient_degree cannot be negative"
            raise ValueError(msg)
        if v > 8:
            msg = "max_coefficient_degree should not exceed 8 (expression swell)"
            raise ValueError(msg)
        return v

    @field_validator("witness_max_degree")
    @classmethod
    def validate_witness_max_degree(cls, v: int) -> int:
        """Validate the default witness search bound."""
        if v < 0:
            msg = "witness_max_degree cannot be negative"
            raise ValueError(msg)
        if v > 20:
            msg = "witness_max_degree should not exceed 20"
            raise ValueError(msg)
        return v

    @field_validator("strand_workers")
    @classmethod
    def validate_strand_workers(cls, v: int) -> int:
        """Validate the strand worker count."""
        if v < 1:
            msg = "strand_workers must be at least 1"
            raise ValueError(msg)
        if v > 64:
            msg = "strand_workers should not exceed 64"
            raise ValueError(msg)
        return v

    @field_validator("rewrite_depth_limit")
    @classmethod
    def validate_rewrite_depth_limit(cls, v: int) -> int:
        """Validate the rewriting guard."""
        if v < 1:
            msg = "rewrite_depth_limit must be positive"
            raise ValueError(msg)
        if v > 900:
            msg = "rewrite_depth_limit should stay below the interpreter recursion limit"
            raise ValueError(msg)
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate and normalize the console log level."""
        level = v.upper()
        if level not in _LOG_LEVELS:
            msg = f"log_level must be one of {', '.join(_LOG_LEVELS)}"
            raise ValueError(msg)
        return level


# Active settings; tests swap them with configure_settings()
_default_settings: Settings | None = None


def get_settings() -> Settings:
    """The active settings, read from the environment on first use.

    Library code calls this rather than touching the module-level ``settings``
    so tests can inject their own values.
    """
    global _default_settings
    if _default_settings is None:
        _default_settings = Settings()
    return _default_settings


def configure_settings(settings: Settings | None) -> None:
    """Install a Settings instance, or ``None`` to go back to the environment.

    Example:
        configure_settings(Settings(identity_samples=10))
        try:
            run_identities(structures)
        finally:
            configure_settings(None)
    """
    global _default_settings
    _default_settings = settings


settings = Settings()
