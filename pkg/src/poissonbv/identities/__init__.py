"""Named identity suites over seeded random instances."""

from poissonbv.identities.registry import (
    SUITES,
    Identity,
    IdentityContext,
    IdentityRegistry,
    configure_registry,
    get_registry,
    identity,
    run_identities,
)

__all__ = [
    "SUITES",
    "Identity",
    "IdentityContext",
    "IdentityRegistry",
    "configure_registry",
    "get_registry",
    "identity",
    "run_identities",
]
