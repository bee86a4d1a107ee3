"""Infrastructure: observability."""

from poissonbv.infra.observability import configure_observability

__all__ = ["configure_observability"]
