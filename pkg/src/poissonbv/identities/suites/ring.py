"""Ring axioms, normal forms and the dual derivations."""

from __future__ import annotations

from poissonbv.identities.registry import IdentityContext, identity
from poissonbv.identities.sampling import random_poly


@identity("ring.commutative", suite="ring", requires_poisson=False)
def commutative(ctx: IdentityContext) -> None:
    for _ in ctx.samples():
        a = random_poly(ctx.rng, ctx.pres, ctx.max_degree)
        b = random_poly(ctx.rng, ctx.pres, ctx.max_degree)
        ctx.check(a * b - b * a)


@identity("ring.associative", suite="ring", requires_poisson=False)
def associative(ctx: IdentityContext) -> None:
    for _ in ctx.samples():
        a, b, c = (random_poly(ctx.rng, ctx.pres, ctx.max_degree) for _ in range(3))
        ctx.check((a * b) * c - a * (b * c))


@identity("ring.distributive", suite="ring", requires_poisson=False)
def distributive(ctx: IdentityContext) -> None:
    for _ in ctx.samples():
        a, b, c = (random_poly(ctx.rng, ctx.pres, ctx.max_degree) for _ in range(3))
        ctx.check(a * (b + c) - (a * b + a * c))


@identity("ring.normal_form", suite="ring", requires_poisson=False)
def normal_form_is_fixed(ctx: IdentityContext) -> None:
    """Reducing an element that is already normal changes nothing."""
    ring = ctx.pres.ring
    for _ in ctx.samples():
        a = random_poly(ctx.rng, ctx.pres, ctx.max_degree) * random_poly(ctx.rng, ctx.pres, 2)
        ctx.expect(ring.reduce(a.terms) == a.terms, f"reduce({a}) moved")
        ctx.expect(all(ring.is_normal(m) for m in a.terms), f"{a} has a reducible monomial")


@identity("ring.dual_leibniz", suite="ring", requires_poisson=False)
def dual_leibniz(ctx: IdentityContext) -> None:
    """(dx_i)*(ab) = a (dx_i)*(b) + b (dx_i)*(a)."""
    pres = ctx.pres
    for _ in ctx.samples():
        a = random_poly(ctx.rng, pres, ctx.max_degree)
        b = random_poly(ctx.rng, pres, ctx.max_degree)
        i = ctx.rng.randrange(pres.r)
        lhs = pres.dual_derivation(i, a * b)
        ctx.check(lhs - a * pres.dual_derivation(i, b) - b * pres.dual_derivation(i, a))
