"""Registry of named algebraic identities.

Identities are plain functions that draw seeded random instances on one
structure and record residues into a report. They are grouped into suites
and registered with the ``identity`` decorator:

    @identity("exterior.d_squared", suite="exterior")
    def d_squared(ctx: IdentityContext) -> None:
        for _ in ctx.samples():
            omega = random_form(ctx.rng, ctx.pres, 1, ctx.max_degree)
            ctx.check(de_rham(de_rham(omega)))
"""

from __future__ import annotations

import importlib
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import logfire

from poissonbv.calculus.poisson import validate_poisson
from poissonbv.config import get_settings
from poissonbv.core.errors import PoissonBVError
from poissonbv.core.report import Residue, ValidationReport
from poissonbv.identities.sampling import seeded

if TYPE_CHECKING:
    import random

    from poissonbv.algebra.presentation import SmoothPresentation
    from poissonbv.calculus.poisson import PoissonStructure
    from poissonbv.document import LoadedStructure

SUITES = ("ring", "exterior", "differentials", "modular", "duality", "bv", "twisted", "render")


@dataclass
class IdentityContext:
    """What one identity run sees: a structure, a generator, a budget and a report."""

    structure: LoadedStructure
    rng: random.Random
    count: int
    max_degree: int
    report: ValidationReport
    check_name: str

    @property
    def pres(self) -> SmoothPresentation:
        """The structure's presentation."""
        return self.structure.pres

    @property
    def poisson(self) -> PoissonStructure:
        """The structure's Poisson bracket."""
        return self.structure.poisson

    def samples(self, count: int | None = None) -> Iterator[int]:
        """Iterate over the sample budget (or a smaller explicit count)."""
        return iter(range(self.count if count is None else min(count, self.count)))

    def check(self, residue: Residue) -> bool:
        """Record a residue that must vanish."""
        return self.report.record(self.check_name, residue)

    def expect(self, condition: bool, witness: str) -> None:
        """Record a boolean condition, with a witness when it fails."""
        if condition:
            if self.check_name not in self.report.checks:
                self.report.checks.append(self.check_name)
        else:
            self.report.fail(self.check_name, witness)


IdentityFunc = Callable[[IdentityContext], None]


def _always(_: LoadedStructure) -> bool:
    return True


def free_only(structure: LoadedStructure) -> bool:
    """Applies to free polynomial presentations only."""
    return structure.pres.is_free


@dataclass
class Identity:
    """A registered identity.

    Attributes:
        name: Dotted name, ``suite.identity``
        suite: One of ``SUITES``
        run: The check itself
        applies: Structure filter; identities that do not apply are skipped
        requires_poisson: Skip structures whose bracket fails validation
    """

    name: str
    suite: str
    run: IdentityFunc
    applies: Callable[[LoadedStructure], bool] = field(default=_always)
    requires_poisson: bool = True


class IdentityRegistry:
    """Identities keyed by name, kept in registration order."""

    def __init__(self) -> None:
        self._identities: dict[str, Identity] = {}

    def register(self, item: Identity) -> None:
        """Register an identity.

        Raises:
            ValueError: If the name is taken or the suite is unknown
        """
        if item.suite not in SUITES:
            msg = f"unknown suite {item.suite!r}"
            raise ValueError(msg)
        if item.name in self._identities:
            msg = f"identity {item.name!r} already registered"
            raise ValueError(msg)
        self._identities[item.name] = item

    def unregister(self, name: str) -> bool:
        """Remove an identity; True if it existed."""
        return self._identities.pop(name, None) is not None

    def get(self, name: str) -> Identity | None:
        """Look up an identity by name."""
        return self._identities.get(name)

    def suite(self, name: str) -> list[Identity]:
        """Identities of one suite, in registration order."""
        return [i for i in self._identities.values() if i.suite == name]

    @property
    def identities(self) -> list[Identity]:
        """All registered identities."""
        return list(self._identities.values())

    def clear(self) -> None:
        """Remove all identities."""
        self._identities.clear()


_builtin = IdentityRegistry()
_active: IdentityRegistry | None = None
_loaded = False


def _load_suites() -> None:
    global _loaded
    if not _loaded:
        _loaded = True
        importlib.import_module("poissonbv.identities.suites")


def get_registry() -> IdentityRegistry:
    """The configured registry, defaulting to the built-in suites."""
    _load_suites()
    return _active if _active is not None else _builtin


def configure_registry(registry: IdentityRegistry | None) -> None:
    """Swap in a custom registry; ``None`` restores the built-in one.

    Example:
        test_registry = IdentityRegistry()
        configure_registry(test_registry)
        try:
            ...
        finally:
            configure_registry(None)
    """
    global _active
    _active = registry


def identity(
    name: str,
    *,
    suite: str,
    applies: Callable[[LoadedStructure], bool] | None = None,
    requires_poisson: bool = True,
) -> Callable[[IdentityFunc], IdentityFunc]:
    """Decorator registering a function as a built-in identity."""

    def decorator(func: IdentityFunc) -> IdentityFunc:
        _builtin.register(
            Identity(
                name=name,
                suite=suite,
                run=func,
                applies=applies or _always,
                requires_poisson=requires_poisson,
            )
        )
        return func

    return decorator


def run_identities(
    structures: list[LoadedStructure],
    *,
    suite: str | None = None,
    samples: int | None = None,
    seed: int | None = None,
    registry: IdentityRegistry | None = None,
) -> ValidationReport:
    """Run identities over structures and collect one report.

    Check names are ``identity[structure]``. A structure whose bracket fails
    validation is reported once and skipped by identities that need it.

    Raises:
        ValueError: For an unknown suite name
    """
    if suite is not None and suite not in SUITES:
        msg = f"unknown suite {suite!r}; choose from {', '.join(SUITES)}"
        raise ValueError(msg)
    settings = get_settings()
    registry = registry or get_registry()
    selected = registry.suite(suite) if suite else registry.identities
    count = settings.identity_samples if samples is None else samples
    base_seed = settings.default_seed if seed is None else seed
    report = ValidationReport(subject=f"identities {suite or 'all'}")
    with logfire.span("identity suites", suite=suite or "all", structures=len(structures), samples=count):
        for structure in structures:
            valid = validate_poisson(structure.poisson.table, structure.pres, structure.name).passed
            if not valid:
                report.fail(f"poisson[{structure.name}]", "bracket fails validation; skipped")
            for item in selected:
                if not item.applies(structure) or (item.requires_poisson and not valid):
                    continue
                check = f"{item.name}[{structure.name}]"
                ctx = IdentityContext(
                    structure=structure,
                    rng=seeded(base_seed, item.name, structure.name),
                    count=count,
                    max_degree=settings.max_coefficient_degree,
                    report=report,
                    check_name=check,
                )
                try:
                    item.run(ctx)
                except PoissonBVError as exc:
                    report.fail(check, f"{exc.code.value}: {exc.message}")
                if check not in report.checks:
                    report.checks.append(check)
        logfire.info(
            "identity suites finished",
            suite=suite or "all",
            checks=len(report.checks),
            failures=len(report.failures),
        )
    return report
