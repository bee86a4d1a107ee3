"""Modular derivation: the dual-basis formula against its defining oracle, and its consequences."""

from __future__ import annotations

from poissonbv.algebra.exterior import KForm, contract_mv, de_rham, mv_apply, schouten
from poissonbv.calculus.bv import BVOperator, bv_delta
from poissonbv.calculus.modular import modular_derivation, modular_oracle, pseudo_unimodular_witness
from poissonbv.calculus.poisson import PoissonDerivation, casimir_basis, chain_partial, hamiltonian
from poissonbv.config import get_settings
from poissonbv.identities.registry import IdentityContext, free_only, identity
from poissonbv.identities.sampling import random_closed_form, random_poly


@identity("modular.oracle_on_generators", suite="modular")
def oracle_on_generators(ctx: IdentityContext) -> None:
    """phi_vol(x_j) equals L_{H_x_j}(vol)/vol for every generator."""
    phi = modular_derivation(ctx.poisson).phi
    for j, x in enumerate(ctx.pres.ring.gens):
        ctx.check(phi.value_on((j,)) - modular_oracle(ctx.poisson, x))


@identity("modular.oracle_random", suite="modular")
def oracle_random(ctx: IdentityContext) -> None:
    phi = modular_derivation(ctx.poisson).phi
    for _ in ctx.samples(20):
        a = random_poly(ctx.rng, ctx.pres, ctx.max_degree)
        ctx.check(mv_apply(phi, [a]) - modular_oracle(ctx.poisson, a))


@identity("modular.is_cocycle", suite="modular")
def is_cocycle(ctx: IdentityContext) -> None:
    """delta(phi_vol) = [pi, phi_vol] = 0."""
    ctx.check(schouten(ctx.poisson.pi, modular_derivation(ctx.poisson).phi))


@identity("modular.volume_twisted_cycle", suite="modular")
def volume_twisted_cycle(ctx: IdentityContext) -> None:
    """partial(vol) = -iota_{phi_vol}(vol)."""
    phi = PoissonDerivation(modular_derivation(ctx.poisson).phi)
    ctx.check(chain_partial(ctx.poisson, KForm.volume(ctx.pres), phi))


@identity(
    "modular.hamiltonian_divergence", suite="modular", applies=lambda s: s.pres.n >= 1
)
def hamiltonian_divergence(ctx: IdentityContext) -> None:
    """Delta(H_a) = -phi_vol(a)."""
    op = BVOperator.on(ctx.pres)
    phi = modular_derivation(ctx.poisson).phi
    for _ in ctx.samples():
        a = random_poly(ctx.rng, ctx.pres, ctx.max_degree)
        divergence = bv_delta(op, hamiltonian(ctx.poisson, a)).as_scalar()
        ctx.check(divergence + mv_apply(phi, [a]))


@identity("modular.closed_form_derivation", suite="modular")
def closed_form_derivation(ctx: IdentityContext) -> None:
    """iota_varpi(pi) is a Poisson derivation for closed varpi."""
    for _ in ctx.samples():
        varpi = random_closed_form(ctx.rng, ctx.pres, ctx.max_degree)
        ctx.check(schouten(ctx.poisson.pi, contract_mv(varpi, ctx.poisson.pi)))


@identity("modular.casimirs_unimodular", suite="modular", applies=free_only)
def casimirs_unimodular(ctx: IdentityContext) -> None:
    """phi_vol vanishes on Casimirs found up to degree 3."""
    phi = modular_derivation(ctx.poisson).phi
    for degree in range(4):
        for a in casimir_basis(ctx.poisson, degree):
            ctx.check(mv_apply(phi, [a]))


@identity("modular.pseudo_unimodular", suite="modular")
def pseudo_unimodular(ctx: IdentityContext) -> None:
    """A returned witness is closed and reproduces phi_vol; phi_vol = 0 always has one."""
    bound = get_settings().witness_max_degree
    phi = modular_derivation(ctx.poisson).phi
    varpi = pseudo_unimodular_witness(ctx.poisson, max_degree=bound)
    if varpi is None:
        ctx.expect(not phi.is_zero(), "no witness although phi_vol = 0")
        ctx.report.note(f"{ctx.structure.name}: pseudo-unimodular witness: none up to degree {bound}")
        return
    ctx.check(de_rham(varpi))
    ctx.check(contract_mv(varpi, ctx.poisson.pi) - phi)
