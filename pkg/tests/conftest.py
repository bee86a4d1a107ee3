"""Pytest configuration and fixtures."""

from __future__ import annotations

import os
import random
from typing import TYPE_CHECKING

import logfire
import pytest

from poissonbv.algebra.presentation import SmoothPresentation
from poissonbv.config import configure_settings
from poissonbv.document import LoadedStructure, load_structure

if TYPE_CHECKING:
    from collections.abc import Iterator

# Reduced sample budget for the identity suites; the CLI runs the full count.
TEST_SAMPLES = int(os.environ.get("POISSON_BV_TEST_SAMPLES", "12"))

logfire.configure(send_to_logfire=False, console=False)


@pytest.fixture(autouse=True)
def reset_settings() -> Iterator[None]:
    """Start and finish every test on default settings."""
    configure_settings(None)
    yield
    configure_settings(None)


@pytest.fixture
def rng() -> random.Random:
    """A seeded generator."""
    return random.Random(20240917)


@pytest.fixture
def samples() -> int:
    """Instances per identity in suite tests."""
    return TEST_SAMPLES


# --- Presentations ---


@pytest.fixture
def plane() -> SmoothPresentation:
    """Free Q[x, y]."""
    return SmoothPresentation.free(["x", "y"], name="plane")


@pytest.fixture
def space() -> SmoothPresentation:
    """Free Q[x, y, z]."""
    return SmoothPresentation.free(["x", "y", "z"], name="space")


# --- Bundled structures ---


@pytest.fixture(scope="session")
def symplectic() -> LoadedStructure:
    """{x, y} = 1."""
    return load_structure("free_symplectic_plane")


@pytest.fixture(scope="session")
def quadratic() -> LoadedStructure:
    """{x, y} = x*y."""
    return load_structure("quadratic_plane")


@pytest.fixture(scope="session")
def so3() -> LoadedStructure:
    """Lie-Poisson so(3) on Q[x, y, z]."""
    return load_structure("so3_free")


@pytest.fixture(scope="session")
def sphere() -> LoadedStructure:
    """The unit sphere with the so(3) bracket."""
    return load_structure("sphere_so3")


@pytest.fixture(scope="session")
def zero_structure() -> LoadedStructure:
    """The zero bracket on Q[x, y, z]."""
    return load_structure("zero_structure")


@pytest.fixture(scope="session")
def corrupted() -> LoadedStructure:
    """so(3) with a bracket that breaks Jacobi."""
    return load_structure("corrupted_so3")
