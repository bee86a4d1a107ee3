"""Calculus twisted by a closed 1-form varpi: d_t, partial_t and Delta_t."""

from __future__ import annotations

from poissonbv.algebra.exterior import KForm, d_twisted, de_rham, schouten
from poissonbv.calculus.bv import BVOperator, bv_delta, bv_twisted, gerstenhaber_via_bv
from poissonbv.calculus.poisson import (
    chain_partial,
    derivation_from_closed_form,
    twisted_chain_partial,
)
from poissonbv.core.errors import NotClosedError
from poissonbv.identities.registry import IdentityContext, identity
from poissonbv.identities.sampling import random_closed_form, random_form, random_multivector


@identity("twisted.d_squared", suite="twisted", applies=lambda s: s.pres.r >= 2, requires_poisson=False)
def d_squared(ctx: IdentityContext) -> None:
    pres = ctx.pres
    for _ in ctx.samples():
        varpi = random_closed_form(ctx.rng, pres, ctx.max_degree)
        omega = random_form(ctx.rng, pres, ctx.rng.randint(0, pres.r - 2), ctx.max_degree)
        ctx.check(d_twisted(varpi, d_twisted(varpi, omega)))


@identity("twisted.partial_route", suite="twisted")
def partial_route(ctx: IdentityContext) -> None:
    """partial_t equals the chain differential twisted by iota_varpi(pi)."""
    pres = ctx.pres
    for _ in ctx.samples():
        varpi = random_closed_form(ctx.rng, pres, ctx.max_degree)
        omega = random_form(ctx.rng, pres, ctx.rng.randint(0, pres.r), ctx.max_degree)
        phi = derivation_from_closed_form(ctx.poisson, varpi)
        ctx.check(twisted_chain_partial(ctx.poisson, varpi, omega) - chain_partial(ctx.poisson, omega, phi))


@identity("twisted.anticommute", suite="twisted", applies=lambda s: s.pres.r >= 2)
def anticommute(ctx: IdentityContext) -> None:
    """partial_t d_t + d_t partial_t = 0."""
    pres = ctx.pres
    poisson = ctx.poisson
    for _ in ctx.samples():
        varpi = random_closed_form(ctx.rng, pres, ctx.max_degree)
        omega = random_form(ctx.rng, pres, ctx.rng.randint(1, pres.r - 1), ctx.max_degree)
        lhs = twisted_chain_partial(poisson, varpi, d_twisted(varpi, omega))
        ctx.check(lhs + d_twisted(varpi, twisted_chain_partial(poisson, varpi, omega)))


@identity("twisted.bv_square", suite="twisted", applies=lambda s: s.pres.n >= 2, requires_poisson=False)
def bv_square(ctx: IdentityContext) -> None:
    pres = ctx.pres
    for _ in ctx.samples():
        op = BVOperator.on(pres, random_closed_form(ctx.rng, pres, ctx.max_degree))
        P = random_multivector(ctx.rng, pres, ctx.rng.randint(2, pres.n), ctx.max_degree)
        ctx.check(bv_delta(op, bv_delta(op, P)))


@identity("twisted.bv_routes", suite="twisted", requires_poisson=False)
def bv_routes(ctx: IdentityContext) -> None:
    """dag^-1 d_t dag = Delta - (-1)^p iota_varpi."""
    pres = ctx.pres
    for _ in ctx.samples():
        op = BVOperator.on(pres, random_closed_form(ctx.rng, pres, ctx.max_degree))
        P = random_multivector(ctx.rng, pres, ctx.rng.randint(0, pres.n), ctx.max_degree)
        ctx.check(bv_delta(op, P) - bv_twisted(op, P))


@identity("twisted.bv_bracket", suite="twisted", requires_poisson=False)
def bv_bracket(ctx: IdentityContext) -> None:
    """Delta_t still generates the Schouten bracket."""
    pres = ctx.pres
    for _ in ctx.samples():
        op = BVOperator.on(pres, random_closed_form(ctx.rng, pres, ctx.max_degree))
        p = ctx.rng.randint(0, pres.n)
        q = ctx.rng.randint(0, pres.n - p)
        P = random_multivector(ctx.rng, pres, p, ctx.max_degree)
        Q = random_multivector(ctx.rng, pres, q, ctx.max_degree)
        ctx.check(gerstenhaber_via_bv(op, P, Q) - schouten(P, Q))


@identity("twisted.rejects_open", suite="twisted", applies=lambda s: s.pres.r >= 2, requires_poisson=False)
def rejects_open(ctx: IdentityContext) -> None:
    """A 1-form that is not closed cannot twist Delta."""
    pres = ctx.pres
    varpi = KForm.basis(pres, (0,), pres.ring.gen(1))
    if de_rham(varpi).is_zero():
        return
    try:
        BVOperator.on(pres, varpi)
    except NotClosedError:
        ctx.expect(True, "")
        return
    ctx.expect(False, f"{varpi} was accepted as a twist")
