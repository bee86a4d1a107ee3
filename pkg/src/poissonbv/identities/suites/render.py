"""Canonical text: rendering then parsing gives back the same element."""

from __future__ import annotations

from poissonbv.algebra.exterior import KForm, Multivector
from poissonbv.algebra.expressions import parse_poly
from poissonbv.identities.registry import IdentityContext, identity
from poissonbv.identities.sampling import random_form, random_multivector, random_poly


@identity("render.poly", suite="render", requires_poisson=False)
def poly_round_trip(ctx: IdentityContext) -> None:
    ring = ctx.pres.ring
    for _ in ctx.samples():
        a = random_poly(ctx.rng, ctx.pres, ctx.max_degree)
        ctx.expect(parse_poly(str(a), ring) == a, f"{a} does not parse back")


@identity("render.form", suite="render", requires_poisson=False)
def form_round_trip(ctx: IdentityContext) -> None:
    pres = ctx.pres
    for _ in ctx.samples():
        omega = random_form(ctx.rng, pres, ctx.rng.randint(0, pres.r), ctx.max_degree)
        if omega.is_zero() and omega.degree > 0:
            continue
        ctx.expect(KForm.parse(str(omega), pres) == omega, f"{omega} does not parse back")


@identity("render.multivector", suite="render", requires_poisson=False)
def multivector_round_trip(ctx: IdentityContext) -> None:
    pres = ctx.pres
    for _ in ctx.samples():
        F = random_multivector(ctx.rng, pres, ctx.rng.randint(0, pres.n), ctx.max_degree)
        if F.is_zero() and F.degree > 0:
            continue
        ctx.expect(Multivector.parse(str(F), pres) == F, f"{F} does not parse back")
