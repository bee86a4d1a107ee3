"""The BV operator: both routes, square zero, the generated bracket and contraction rules."""

from __future__ import annotations

from typing import TYPE_CHECKING

from poissonbv.algebra.exterior import (
    Multivector,
    contract_form,
    contract_mv,
    de_rham,
    mv_wedge,
    schouten,
)
from poissonbv.calculus.bv import (
    BVOperator,
    bv_delta,
    bv_delta_explicit,
    bv_delta_monomial,
    gerstenhaber_via_bv,
)
from poissonbv.calculus.modular import modular_derivation
from poissonbv.calculus.poisson import cochain_delta
from poissonbv.identities.registry import IdentityContext, identity
from poissonbv.identities.sampling import random_form, random_monomial_index, random_multivector

if TYPE_CHECKING:
    from poissonbv.document import LoadedStructure


def _standard_free(structure: LoadedStructure) -> bool:
    pres = structure.pres
    top = tuple(range(pres.r))
    one = pres.ring.one
    return pres.is_free and pres.volume_a == {top: one} and pres.volume_b == {top: one}


@identity("bv.routes", suite="bv", requires_poisson=False)
def routes(ctx: IdentityContext) -> None:
    """Delta through the duality map equals the dual-basis formula."""
    op = BVOperator.on(ctx.pres)
    for _ in ctx.samples():
        P = random_multivector(ctx.rng, ctx.pres, ctx.rng.randint(1, ctx.pres.n), ctx.max_degree)
        ctx.check(bv_delta(op, P) - bv_delta_explicit(ctx.pres, P))


@identity("bv.square_zero", suite="bv", applies=lambda s: s.pres.n >= 2, requires_poisson=False)
def square_zero(ctx: IdentityContext) -> None:
    op = BVOperator.on(ctx.pres)
    for _ in ctx.samples():
        P = random_multivector(ctx.rng, ctx.pres, ctx.rng.randint(2, ctx.pres.n), ctx.max_degree)
        ctx.check(bv_delta(op, bv_delta(op, P)))


@identity("bv.generates_schouten", suite="bv", requires_poisson=False)
def generates_schouten(ctx: IdentityContext) -> None:
    """(-1)^p (Delta(PQ) - Delta(P)Q - (-1)^p P Delta(Q)) = [P, Q]."""
    op = BVOperator.on(ctx.pres)
    n = ctx.pres.n
    for _ in ctx.samples():
        p = ctx.rng.randint(0, n)
        q = ctx.rng.randint(0, n + 1 - p)
        P = random_multivector(ctx.rng, ctx.pres, p, ctx.max_degree)
        Q = random_multivector(ctx.rng, ctx.pres, q, ctx.max_degree)
        ctx.check(gerstenhaber_via_bv(op, P, Q) - schouten(P, Q))


@identity("bv.bivector_is_modular", suite="bv", applies=lambda s: s.pres.n >= 2)
def bivector_is_modular(ctx: IdentityContext) -> None:
    """Delta(pi) = phi_vol."""
    op = BVOperator.on(ctx.pres)
    ctx.check(bv_delta(op, ctx.poisson.pi) - modular_derivation(ctx.poisson).phi)


@identity("bv.homotopy", suite="bv", applies=lambda s: s.pres.n >= 2)
def homotopy(ctx: IdentityContext) -> None:
    """(Delta delta + delta Delta)(P) = [phi_vol, P]."""
    op = BVOperator.on(ctx.pres)
    poisson = ctx.poisson
    phi = modular_derivation(poisson).phi
    for _ in ctx.samples():
        P = random_multivector(ctx.rng, ctx.pres, ctx.rng.randint(1, ctx.pres.n - 1), ctx.max_degree)
        lhs = bv_delta(op, cochain_delta(poisson, P)) + cochain_delta(poisson, bv_delta(op, P))
        ctx.check(lhs - schouten(phi, P))


@identity("bv.monomial_closed_form", suite="bv", applies=_standard_free, requires_poisson=False)
def monomial_closed_form(ctx: IdentityContext) -> None:
    """On Q[x_1..x_r] with vol = dx_1..dx_r, Delta(a d_J) = sum_j (-1)^j da/dx_{J_j} d_{J - j}."""
    op = BVOperator.on(ctx.pres)
    for _ in ctx.samples(20):
        a, index = random_monomial_index(ctx.rng, ctx.pres, ctx.rng.randint(1, ctx.pres.n), ctx.max_degree)
        P = Multivector.basis(ctx.pres, index, a)
        ctx.check(bv_delta(op, P) - bv_delta_monomial(ctx.pres, a, index))


@identity("bv.contraction_intertwines", suite="bv", requires_poisson=False)
def contraction_intertwines(ctx: IdentityContext) -> None:
    """iota_w(Delta P) = Delta(iota_w P) + iota_{dw}(P) for deg w < deg P."""
    op = BVOperator.on(ctx.pres)
    for _ in ctx.samples():
        p = ctx.rng.randint(1, ctx.pres.n)
        P = random_multivector(ctx.rng, ctx.pres, p, ctx.max_degree)
        omega = random_form(ctx.rng, ctx.pres, ctx.rng.randint(0, p - 1), ctx.max_degree)
        lhs = contract_mv(omega, bv_delta(op, P))
        rhs = bv_delta(op, contract_mv(omega, P)) + contract_mv(de_rham(omega), P)
        ctx.check(lhs - rhs)


@identity("bv.contraction_antiderivation", suite="bv", requires_poisson=False)
def contraction_antiderivation(ctx: IdentityContext) -> None:
    """For a 1-form w, iota_w(P ^ Q) = P ^ iota_w(Q) + (-1)^q iota_w(P) ^ Q."""
    n = ctx.pres.n
    for _ in ctx.samples():
        p = ctx.rng.randint(1, n)
        q = ctx.rng.randint(1, max(1, n + 1 - p))
        P = random_multivector(ctx.rng, ctx.pres, p, ctx.max_degree)
        Q = random_multivector(ctx.rng, ctx.pres, q, ctx.max_degree)
        omega = random_form(ctx.rng, ctx.pres, 1, ctx.max_degree)
        lhs = contract_mv(omega, mv_wedge(P, Q))
        rhs = mv_wedge(P, contract_mv(omega, Q)) + mv_wedge(contract_mv(omega, P), Q).scale(
            -1 if q % 2 else 1
        )
        ctx.check(lhs - rhs)


@identity("bv.wedge_contraction", suite="bv", requires_poisson=False)
def wedge_contraction(ctx: IdentityContext) -> None:
    """For deg w = p + q - 1, iota_w(P ^ Q) = (-1)^{(p-1)q} iota_{iota_Q w}(P) + (-1)^p iota_{iota_P w}(Q)."""
    n = ctx.pres.n
    for _ in ctx.samples():
        p = ctx.rng.randint(1, n)
        q = ctx.rng.randint(1, n + 1 - p)
        P = random_multivector(ctx.rng, ctx.pres, p, ctx.max_degree)
        Q = random_multivector(ctx.rng, ctx.pres, q, ctx.max_degree)
        omega = random_form(ctx.rng, ctx.pres, p + q - 1, ctx.max_degree)
        lhs = contract_mv(omega, mv_wedge(P, Q))
        rhs = contract_mv(contract_form(Q, omega), P).scale(
            -1 if ((p - 1) * q) % 2 else 1
        ) + contract_mv(contract_form(P, omega), Q).scale(-1 if p % 2 else 1)
        ctx.check(lhs - rhs)


@identity("bv.bracket_contraction", suite="bv", requires_poisson=False)
def bracket_contraction(ctx: IdentityContext) -> None:
    """iota_{[P,Q]} w = (-1)^{(p-1)(q-1)} iota_P d iota_Q w - iota_Q d iota_P w + (-1)^p iota_{P^Q} dw."""
    pres = ctx.pres
    for _ in ctx.samples():
        p = ctx.rng.randint(1, min(2, pres.n))
        q = ctx.rng.randint(1, min(2, pres.n))
        if p + q - 1 > pres.r:
            continue
        P = random_multivector(ctx.rng, pres, p, 2)
        Q = random_multivector(ctx.rng, pres, q, 2)
        omega = random_form(ctx.rng, pres, ctx.rng.randint(p + q - 1, pres.r), 2)
        lhs = contract_form(schouten(P, Q), omega)
        first = contract_form(P, de_rham(contract_form(Q, omega)))
        second = contract_form(Q, de_rham(contract_form(P, omega)))
        third = contract_form(mv_wedge(P, Q), de_rham(omega))
        rhs = (
            first.scale(-1 if (p - 1) * (q - 1) % 2 else 1)
            - second
            + third.scale(-1 if p % 2 else 1)
        )
        ctx.check(lhs - rhs)
