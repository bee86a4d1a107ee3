"""Observability configuration with Logfire integration."""

from __future__ import annotations

import sys
from typing import Literal, cast

import logfire

from poissonbv.config import get_settings

LevelName = Literal["trace", "debug", "info", "notice", "warn", "error", "fatal"]

_LEVEL_ALIASES = {"WARNING": "warn"}


def configure_observability(*, verbose: bool = False) -> None:
    """Configure Logfire for observability.

    Call once at process startup. Console output goes to stderr so
    reports on stdout stay byte-stable.

    Args:
        verbose: Force console output at debug level
    """
    settings = get_settings()
    level = "debug" if verbose else _LEVEL_ALIASES.get(settings.log_level, settings.log_level.lower())
    # Console output only in development mode unless asked for
    console_option: logfire.ConsoleOptions | Literal[False] = False
    if verbose or settings.environment == "development":
        console_option = logfire.ConsoleOptions(
            min_log_level=cast(LevelName, level),
            output=sys.stderr,
        )
    # Only send to Logfire if token is present
    send_to_logfire = "if-token-present" if not settings.logfire_token else True
    logfire.configure(
        token=settings.logfire_token,
        service_name="poisson-bv-calc",
        service_version=settings.version,
        environment=settings.environment,
        console=console_option,
        send_to_logfire=send_to_logfire,
    )
