"""Built-in identity suites; importing this package registers them."""

from poissonbv.identities.suites import (
    bv,
    differentials,
    duality,
    exterior,
    modular,
    render,
    ring,
    twisted,
)

__all__ = ["bv", "differentials", "duality", "exterior", "modular", "render", "ring", "twisted"]
