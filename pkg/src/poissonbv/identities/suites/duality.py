"""Duality between multivectors and forms, and the twisted duality square."""

from __future__ import annotations

from poissonbv.algebra.exterior import Multivector
from poissonbv.calculus.duality import DualityContext, ddag, ddag_factored, flat, verify_duality_square
from poissonbv.calculus.modular import modular_derivation
from poissonbv.identities.registry import IdentityContext, identity
from poissonbv.identities.sampling import random_form, random_multivector, random_poisson_derivation


@identity("duality.round_trip", suite="duality", requires_poisson=False)
def round_trip(ctx: IdentityContext) -> None:
    """flat . ddag = id on multivectors and ddag . flat = id on forms, every degree."""
    dc = DualityContext(ctx.pres)
    for _ in ctx.samples():
        for p in range(dc.n + 1):
            F = random_multivector(ctx.rng, ctx.pres, p, ctx.max_degree)
            ctx.check(flat(dc, ddag(dc, F)) - F)
            omega = random_form(ctx.rng, ctx.pres, dc.n - p, ctx.max_degree)
            ctx.check(ddag(dc, flat(dc, omega)) - omega)


@identity("duality.factorization", suite="duality", requires_poisson=False)
def factorization(ctx: IdentityContext) -> None:
    """ddag(F) = sum_K F(x_K) iota_{(dx_K)*}(vol)."""
    dc = DualityContext(ctx.pres)
    for _ in ctx.samples():
        F = random_multivector(ctx.rng, ctx.pres, ctx.rng.randint(0, dc.n), ctx.max_degree)
        ctx.check(ddag(dc, F) - ddag_factored(dc, F))


@identity("duality.square", suite="duality")
def square(ctx: IdentityContext) -> None:
    """partial_{phi + phi_vol}(dag F) = dag(delta_phi F), phi absent or random."""
    dc = DualityContext(ctx.pres)
    for sample in ctx.samples():
        phi = None if sample % 2 == 0 else random_poisson_derivation(ctx.rng, ctx.poisson, ctx.max_degree)
        F = random_multivector(ctx.rng, ctx.pres, ctx.rng.randint(0, dc.n), ctx.max_degree)
        outcome = verify_duality_square(dc, ctx.poisson, F, phi)
        witness = "; ".join(f"{f.check}: {f.witness}" for f in outcome.failures)
        ctx.expect(outcome.passed, witness)


@identity(
    "duality.untwisted_square_breaks",
    suite="duality",
    applies=lambda s: not modular_derivation(s.poisson).phi.is_zero(),
)
def untwisted_square_breaks(ctx: IdentityContext) -> None:
    """Dropping the modular twist is detected on F = 1, where the residue is iota_{phi_vol}(vol)."""
    dc = DualityContext(ctx.pres)
    outcome = verify_duality_square(
        dc, ctx.poisson, Multivector.scalar(ctx.pres, 1), include_modular_twist=False
    )
    ctx.expect(not outcome.passed, "the untwisted square commuted although phi_vol != 0")
    for failure in outcome.failures:
        ctx.report.note(f"{ctx.structure.name}: untwisted {failure.check} residue {failure.witness}")
