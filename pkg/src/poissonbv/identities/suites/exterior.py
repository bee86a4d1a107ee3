"""Exterior calculus: d, wedge, the two contractions and the Schouten bracket."""

from __future__ import annotations

from poissonbv.algebra.exterior import (
    KForm,
    Multivector,
    commutator,
    contract_form,
    contract_form_dual_residue,
    contract_mv,
    contract_mv_decomposable,
    de_rham,
    form_wedge,
    lie_derivative,
    mv_apply,
    mv_wedge,
    pair,
    schouten,
    schouten_decomposable,
    wedge_all,
    wedge_value,
)
from poissonbv.algebra.ring import total
from poissonbv.calculus.poisson import hamiltonian
from poissonbv.identities.registry import IdentityContext, identity
from poissonbv.identities.sampling import random_form, random_multivector, random_poly


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


@identity("exterior.d_squared", suite="exterior", requires_poisson=False)
def d_squared(ctx: IdentityContext) -> None:
    for _ in ctx.samples():
        omega = random_form(ctx.rng, ctx.pres, ctx.rng.randint(0, ctx.pres.r - 1), ctx.max_degree)
        ctx.check(de_rham(de_rham(omega)))


@identity("exterior.d_leibniz", suite="exterior", requires_poisson=False)
def d_leibniz(ctx: IdentityContext) -> None:
    """d(a ^ b) = da ^ b + (-1)^|a| a ^ db."""
    r = ctx.pres.r
    for _ in ctx.samples():
        p = ctx.rng.randint(0, r - 1)
        alpha = random_form(ctx.rng, ctx.pres, p, ctx.max_degree)
        beta = random_form(ctx.rng, ctx.pres, ctx.rng.randint(0, r - 1 - p), ctx.max_degree)
        lhs = de_rham(form_wedge(alpha, beta))
        rhs = form_wedge(de_rham(alpha), beta) + form_wedge(alpha, de_rham(beta)).scale(_sign(p))
        ctx.check(lhs - rhs)


@identity("exterior.contractions_commute", suite="exterior", requires_poisson=False)
def contractions_commute(ctx: IdentityContext) -> None:
    """iota_F iota_G = (-1)^{p1 p2} iota_G iota_F on forms."""
    r = ctx.pres.r
    for _ in ctx.samples():
        p1 = ctx.rng.randint(1, r - 1)
        p2 = ctx.rng.randint(1, r - p1)
        F = random_multivector(ctx.rng, ctx.pres, p1, ctx.max_degree)
        G = random_multivector(ctx.rng, ctx.pres, p2, ctx.max_degree)
        omega = random_form(ctx.rng, ctx.pres, ctx.rng.randint(p1 + p2, r), ctx.max_degree)
        lhs = contract_form(F, contract_form(G, omega))
        rhs = contract_form(G, contract_form(F, omega)).scale(_sign(p1 * p2))
        ctx.check(lhs - rhs)


@identity("exterior.contract_wedge_exact", suite="exterior", requires_poisson=False)
def contract_wedge_exact(ctx: IdentityContext) -> None:
    """iota_F(w ^ da) = iota_F(w) ^ da + (-1)^{q-p+1} iota_{iota_da F}(w)."""
    pres = ctx.pres
    for _ in ctx.samples():
        p = ctx.rng.randint(1, pres.r - 1)
        q = ctx.rng.randint(p, pres.r - 1)
        F = random_multivector(ctx.rng, pres, p, ctx.max_degree)
        omega = random_form(ctx.rng, pres, q, ctx.max_degree)
        da = de_rham(KForm.scalar(pres, random_poly(ctx.rng, pres, ctx.max_degree)))
        lhs = contract_form(F, form_wedge(omega, da))
        rhs = form_wedge(contract_form(F, omega), da) + contract_form(
            contract_mv(da, F), omega
        ).scale(_sign(q - p + 1))
        ctx.check(lhs - rhs)


@identity("exterior.top_form_derivation", suite="exterior", requires_poisson=False)
def top_form_derivation(ctx: IdentityContext) -> None:
    """F(a) eta = da ^ iota_F(eta) for a top form eta and a 1-multivector F."""
    pres = ctx.pres
    vol = KForm.volume(pres)
    for _ in ctx.samples():
        eta = vol.scale(random_poly(ctx.rng, pres, ctx.max_degree))
        F = random_multivector(ctx.rng, pres, 1, ctx.max_degree)
        a = random_poly(ctx.rng, pres, ctx.max_degree)
        da = de_rham(KForm.scalar(pres, a))
        ctx.check(eta.scale(mv_apply(F, [a])) - form_wedge(da, contract_form(F, eta)))


@identity(
    "exterior.hamiltonian_top_form", suite="exterior", applies=lambda s: s.pres.n >= 2
)
def hamiltonian_top_form(ctx: IdentityContext) -> None:
    """iota_{H_a}(eta) = -da ^ iota_pi(eta) for a top form eta."""
    pres = ctx.pres
    vol = KForm.volume(pres)
    for _ in ctx.samples():
        eta = vol.scale(random_poly(ctx.rng, pres, ctx.max_degree))
        a = random_poly(ctx.rng, pres, ctx.max_degree)
        da = de_rham(KForm.scalar(pres, a))
        lhs = contract_form(hamiltonian(ctx.poisson, a), eta)
        ctx.check(lhs + form_wedge(da, contract_form(ctx.poisson.pi, eta)))


@identity("exterior.pairing_expansion", suite="exterior", requires_poisson=False)
def pairing_expansion(ctx: IdentityContext) -> None:
    """f(w) = sum over (n-p)-subsets I of (f ^ (dx_I)*)(w ^ dx_I)."""
    pres = ctx.pres
    for _ in ctx.samples():
        p = ctx.rng.randint(0, pres.n)
        f = random_multivector(ctx.rng, pres, p, ctx.max_degree)
        omega = random_form(ctx.rng, pres, p, ctx.max_degree)
        expansion = total(
            (
                pair(
                    mv_wedge(f, Multivector.basis(pres, index)),
                    form_wedge(omega, KForm.basis(pres, index)),
                )
                for index in pres.subsets(pres.n - p)
            ),
            pres.ring,
        )
        ctx.check(pair(f, omega) - expansion)


@identity("exterior.contraction_dual", suite="exterior", requires_poisson=False)
def contraction_dual(ctx: IdentityContext) -> None:
    """G(iota_F w) = (F ^ G)(w) for every basis multivector G."""
    pres = ctx.pres
    for _ in ctx.samples():
        p = ctx.rng.randint(1, pres.r)
        F = random_multivector(ctx.rng, pres, p, ctx.max_degree)
        omega = random_form(ctx.rng, pres, ctx.rng.randint(p, pres.r), ctx.max_degree)
        ctx.check(contract_form_dual_residue(F, omega))


@identity("exterior.contraction_decomposable", suite="exterior", requires_poisson=False)
def contraction_decomposable(ctx: IdentityContext) -> None:
    """iota_w on a wedge of 1-multivectors agrees with its shuffle expansion."""
    pres = ctx.pres
    for _ in ctx.samples():
        q = ctx.rng.randint(1, pres.n)
        xis = [random_multivector(ctx.rng, pres, 1, ctx.max_degree) for _ in range(q)]
        omega = random_form(ctx.rng, pres, ctx.rng.randint(0, q), ctx.max_degree)
        ctx.check(contract_mv(omega, wedge_all(pres, xis)) - contract_mv_decomposable(omega, xis))


@identity("exterior.wedge_value", suite="exterior", requires_poisson=False)
def wedge_value_matches(ctx: IdentityContext) -> None:
    """(F ^ G)(a_1..a_{p+q}) by the shuffle sum of values."""
    pres = ctx.pres
    for _ in ctx.samples():
        p = ctx.rng.randint(0, pres.n)
        q = ctx.rng.randint(0, pres.n - p)
        F = random_multivector(ctx.rng, pres, p, ctx.max_degree)
        G = random_multivector(ctx.rng, pres, q, ctx.max_degree)
        args = [random_poly(ctx.rng, pres, 2) for _ in range(p + q)]
        ctx.check(mv_apply(mv_wedge(F, G), args) - wedge_value(F, G, args))


@identity("exterior.lie_commutes_d", suite="exterior", requires_poisson=False)
def lie_commutes_d(ctx: IdentityContext) -> None:
    pres = ctx.pres
    for _ in ctx.samples():
        xi = random_multivector(ctx.rng, pres, 1, ctx.max_degree)
        omega = random_form(ctx.rng, pres, ctx.rng.randint(0, pres.r - 1), ctx.max_degree)
        ctx.check(lie_derivative(xi, de_rham(omega)) - de_rham(lie_derivative(xi, omega)))


@identity("exterior.schouten_commutator", suite="exterior", requires_poisson=False)
def schouten_commutator(ctx: IdentityContext) -> None:
    """On 1-multivectors the bracket is the commutator of derivations."""
    pres = ctx.pres
    for _ in ctx.samples():
        xi = random_multivector(ctx.rng, pres, 1, ctx.max_degree)
        eta = random_multivector(ctx.rng, pres, 1, ctx.max_degree)
        ctx.check(schouten(xi, eta) - commutator(xi, eta))


@identity("exterior.schouten_skew", suite="exterior", requires_poisson=False)
def schouten_skew(ctx: IdentityContext) -> None:
    """[P, Q] = -(-1)^{(p-1)(q-1)} [Q, P]."""
    pres = ctx.pres
    for _ in ctx.samples():
        p = ctx.rng.randint(0, pres.n)
        q = ctx.rng.randint(0, pres.n + 1 - p)
        P = random_multivector(ctx.rng, pres, p, ctx.max_degree)
        Q = random_multivector(ctx.rng, pres, q, ctx.max_degree)
        ctx.check(schouten(P, Q) + schouten(Q, P).scale(_sign((p - 1) * (q - 1))))


@identity("exterior.schouten_decomposable", suite="exterior", requires_poisson=False)
def schouten_on_decomposables(ctx: IdentityContext) -> None:
    pres = ctx.pres
    for _ in ctx.samples():
        p = ctx.rng.randint(1, min(2, pres.n))
        q = ctx.rng.randint(1, min(2, pres.n + 1 - p))
        xis = [random_multivector(ctx.rng, pres, 1, 2) for _ in range(p)]
        etas = [random_multivector(ctx.rng, pres, 1, 2) for _ in range(q)]
        lhs = schouten(wedge_all(pres, xis), wedge_all(pres, etas))
        ctx.check(lhs - schouten_decomposable(xis, etas))


@identity("exterior.schouten_jacobi", suite="exterior", requires_poisson=False)
def schouten_jacobi(ctx: IdentityContext) -> None:
    """[P,[Q,S]] = [[P,Q],S] + (-1)^{(p-1)(q-1)} [Q,[P,S]] on degrees <= 2."""
    pres = ctx.pres
    for _ in ctx.samples(10):
        p, q, s = (ctx.rng.randint(1, min(2, pres.n)) for _ in range(3))
        P = random_multivector(ctx.rng, pres, p, 2)
        Q = random_multivector(ctx.rng, pres, q, 2)
        S = random_multivector(ctx.rng, pres, s, 2)
        lhs = schouten(P, schouten(Q, S))
        rhs = schouten(schouten(P, Q), S) + schouten(Q, schouten(P, S)).scale(_sign((p - 1) * (q - 1)))
        ctx.check(lhs - rhs)
