"""Poisson cochain and chain differentials, twisted by Poisson derivations."""

from __future__ import annotations

from typing import TYPE_CHECKING

from poissonbv.algebra.exterior import contract_form, de_rham, mv_wedge
from poissonbv.calculus.modular import modular_derivation
from poissonbv.calculus.poisson import (
    PoissonDerivation,
    chain_partial,
    chain_partial_direct,
    cochain_delta,
    cochain_delta_direct,
)
from poissonbv.identities.registry import IdentityContext, identity
from poissonbv.identities.sampling import random_form, random_multivector, random_poisson_derivation

if TYPE_CHECKING:
    import random


def _twist(ctx: IdentityContext, rng: random.Random) -> PoissonDerivation | None:
    """No twist, a random Poisson derivation or the modular derivation, in equal measure."""
    choice = rng.randrange(3)
    if choice == 0:
        return None
    if choice == 1:
        return random_poisson_derivation(rng, ctx.poisson, ctx.max_degree)
    return PoissonDerivation(modular_derivation(ctx.poisson).phi)


@identity("differentials.delta_squared", suite="differentials")
def delta_squared(ctx: IdentityContext) -> None:
    pres = ctx.pres
    for _ in ctx.samples():
        phi = _twist(ctx, ctx.rng)
        F = random_multivector(ctx.rng, pres, ctx.rng.randint(0, pres.n), ctx.max_degree)
        ctx.check(cochain_delta(ctx.poisson, cochain_delta(ctx.poisson, F, phi), phi))


@identity("differentials.partial_squared", suite="differentials")
def partial_squared(ctx: IdentityContext) -> None:
    pres = ctx.pres
    for _ in ctx.samples():
        phi = _twist(ctx, ctx.rng)
        omega = random_form(ctx.rng, pres, ctx.rng.randint(0, pres.r), ctx.max_degree)
        ctx.check(chain_partial(ctx.poisson, chain_partial(ctx.poisson, omega, phi), phi))


@identity("differentials.delta_routes", suite="differentials")
def delta_routes(ctx: IdentityContext) -> None:
    """[pi, F] - phi ^ F agrees with the alternating-sum formula."""
    pres = ctx.pres
    for _ in ctx.samples():
        phi = _twist(ctx, ctx.rng)
        F = random_multivector(ctx.rng, pres, ctx.rng.randint(0, pres.n), ctx.max_degree)
        route = cochain_delta(ctx.poisson, F, phi)
        ctx.check(route - cochain_delta_direct(ctx.poisson, F, phi))


@identity("differentials.partial_routes", suite="differentials")
def partial_routes(ctx: IdentityContext) -> None:
    """[iota_pi, d] + iota_phi agrees with the alternating-sum formula."""
    pres = ctx.pres
    for _ in ctx.samples():
        phi = _twist(ctx, ctx.rng)
        omega = random_form(ctx.rng, pres, ctx.rng.randint(1, pres.r), ctx.max_degree)
        route = chain_partial(ctx.poisson, omega, phi)
        ctx.check(route - chain_partial_direct(ctx.poisson, omega, phi))


@identity("differentials.contraction_homotopy", suite="differentials")
def contraction_homotopy(ctx: IdentityContext) -> None:
    """iota_F partial - (-1)^p partial iota_F = iota_{delta F}."""
    pres = ctx.pres
    poisson = ctx.poisson
    for _ in ctx.samples():
        p = ctx.rng.randint(0, min(pres.n, pres.r - 1))
        F = random_multivector(ctx.rng, pres, p, ctx.max_degree)
        omega = random_form(ctx.rng, pres, ctx.rng.randint(p + 1, pres.r), ctx.max_degree)
        sign = -1 if p % 2 else 1
        lhs = contract_form(F, chain_partial(poisson, omega)) - chain_partial(
            poisson, contract_form(F, omega)
        ).scale(sign)
        ctx.check(lhs - contract_form(cochain_delta(poisson, F), omega))


@identity("differentials.delta_leibniz", suite="differentials")
def delta_leibniz(ctx: IdentityContext) -> None:
    """delta_phi(F ^ G) = delta(F) ^ G + (-1)^p F ^ delta_phi(G)."""
    pres = ctx.pres
    poisson = ctx.poisson
    for _ in ctx.samples():
        phi = _twist(ctx, ctx.rng)
        p = ctx.rng.randint(0, pres.n)
        F = random_multivector(ctx.rng, pres, p, ctx.max_degree)
        G = random_multivector(ctx.rng, pres, ctx.rng.randint(0, pres.n - p), ctx.max_degree)
        lhs = cochain_delta(poisson, mv_wedge(F, G), phi)
        rhs = mv_wedge(cochain_delta(poisson, F), G) + mv_wedge(F, cochain_delta(poisson, G, phi)).scale(
            -1 if p % 2 else 1
        )
        ctx.check(lhs - rhs)


@identity("differentials.anticommutes_with_d", suite="differentials")
def anticommutes_with_d(ctx: IdentityContext) -> None:
    """partial d + d partial = 0 on forms of positive degree."""
    pres = ctx.pres
    for _ in ctx.samples():
        omega = random_form(ctx.rng, pres, ctx.rng.randint(1, pres.r), ctx.max_degree)
        lhs = chain_partial(ctx.poisson, de_rham(omega)) + de_rham(chain_partial(ctx.poisson, omega))
        ctx.check(lhs)
