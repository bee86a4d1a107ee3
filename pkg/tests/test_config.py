"""Tests for configuration module."""

import pytest
from pydantic import ValidationError


class TestSettings:
    """Tests for the Settings class."""

    def test_default_values(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that default values are set correctly."""
        from poissonbv.config import Settings

        for name in ("DEFAULT_SEED", "IDENTITY_SAMPLES", "WITNESS_MAX_DEGREE", "LOG_LEVEL", "ENVIRONMENT"):
            monkeypatch.delenv(f"POISSON_BV_{name}", raising=False)

        settings = Settings()

        assert settings.default_seed == 20240917
        assert settings.identity_samples == 100
        assert settings.max_coefficient_degree == 3
        assert settings.witness_max_degree == 6
        assert settings.strand_workers == 1
        assert settings.rewrite_depth_limit == 400
        assert settings.log_level == "WARNING"
        assert settings.environment == "development"
        assert settings.logfire_token is None

    def test_environment_override(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that environment variables override defaults."""
        from poissonbv.config import Settings

        monkeypatch.setenv("POISSON_BV_IDENTITY_SAMPLES", "20")
        monkeypatch.setenv("POISSON_BV_DEFAULT_SEED", "7")
        monkeypatch.setenv("POISSON_BV_LOG_LEVEL", "debug")

        settings = Settings()

        assert settings.identity_samples == 20
        assert settings.default_seed == 7
        assert settings.log_level == "DEBUG"


class TestSettingsValidation:
    """Tests for field validators."""

    @pytest.mark.parametrize(
        ("field", "value"),
        [
            ("identity_samples", 0),
            ("identity_samples", 10_001),
            ("max_coefficient_degree", -1),
            ("max_coefficient_degree", 9),
            ("witness_max_degree", 21),
            ("strand_workers", 0),
            ("rewrite_depth_limit", 901),
        ],
    )
    def test_out_of_range_rejected(self, field: str, value: int) -> None:
        """Test that out-of-range numbers are rejected."""
        from poissonbv.config import Settings

        with pytest.raises(ValidationError):
            Settings(**{field: value})  # type: ignore[arg-type]

    def test_unknown_log_level_rejected(self) -> None:
        """Test that unknown level names are rejected."""
        from poissonbv.config import Settings

        with pytest.raises(ValidationError, match="log_level"):
            Settings(log_level="LOUD")


class TestConfigureSettings:
    """Tests for settings injection."""

    def test_configure_and_reset(self) -> None:
        """Test injecting settings and resetting to defaults."""
        from poissonbv.config import Settings, configure_settings, get_settings

        custom = Settings(identity_samples=5)
        configure_settings(custom)
        assert get_settings() is custom
        assert get_settings().identity_samples == 5

        configure_settings(None)
        assert get_settings() is not custom
