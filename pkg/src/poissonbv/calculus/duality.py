"""Duality between multivectors and forms, and the twisted duality square."""

from __future__ import annotations

from dataclasses import dataclass, field

import logfire

from poissonbv.algebra.exterior import KForm, Multivector, contract_form, contract_mv
from poissonbv.algebra.presentation import SmoothPresentation
from poissonbv.calculus.modular import modular_derivation
from poissonbv.calculus.poisson import (
    PoissonDerivation,
    PoissonStructure,
    chain_partial,
    cochain_delta,
    validate_poisson_derivation,
)
from poissonbv.core.errors import DegreeOutOfRangeError
from poissonbv.core.report import ValidationReport


@dataclass(frozen=True)
class DualityContext:
    """A presentation with its volume form and dual volume multivector."""

    pres: SmoothPresentation
    vol: KForm = field(init=False)
    vol_star: Multivector = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vol", KForm.volume(self.pres))
        object.__setattr__(self, "vol_star", Multivector.covolume(self.pres))

    @property
    def n(self) -> int:
        """Smooth dimension."""
        return self.pres.n


def dag_sign(p: int) -> int:
    """(-1)^{p(p+1)/2}."""
    return -1 if (p * (p + 1) // 2) % 2 else 1


def _check_degree(ctx: DualityContext, p: int, what: str) -> None:
    if not 0 <= p <= ctx.n:
        msg = f"{what} degree {p} outside 0..{ctx.n}"
        raise DegreeOutOfRangeError(msg, details={"degree": p, "n": ctx.n})


def ddag(ctx: DualityContext, F: Multivector) -> KForm:
    """F -> iota_F(vol), from p-multivectors to (n-p)-forms.

    Raises:
        DegreeOutOfRangeError: Unless 0 <= p <= n
    """
    _check_degree(ctx, F.degree, "multivector")
    return contract_form(F, ctx.vol)


def flat(ctx: DualityContext, omega: KForm) -> Multivector:
    """omega -> iota_omega(vol*), the inverse of ``ddag``.

    Raises:
        DegreeOutOfRangeError: Unless 0 <= deg omega <= n
    """
    _check_degree(ctx, omega.degree, "form")
    return contract_mv(omega, ctx.vol_star)


def dag(ctx: DualityContext, F: Multivector) -> KForm:
    """The signed duality map (-1)^{p(p+1)/2} ddag(F)."""
    return ddag(ctx, F).scale(dag_sign(F.degree))


def dag_inverse(ctx: DualityContext, omega: KForm) -> Multivector:
    """Inverse of ``dag``: (-1)^{p(p+1)/2} flat(omega) with p = n - deg omega."""
    return flat(ctx, omega).scale(dag_sign(ctx.n - omega.degree))


def ddag_factored(ctx: DualityContext, F: Multivector) -> KForm:
    """ddag through sum_K F(x_K) iota_{(dx_K)*}(vol)."""
    _check_degree(ctx, F.degree, "multivector")
    result = KForm.zero(ctx.pres, ctx.n - F.degree)
    for k in ctx.pres.subsets(F.degree):
        value = F.value_on(k)
        if not value.is_zero():
            result = result + contract_form(Multivector.basis(ctx.pres, k), ctx.vol).scale(value)
    return result


def verify_duality_square(
    ctx: DualityContext,
    poisson: PoissonStructure,
    F: Multivector,
    phi: PoissonDerivation | Multivector | None = None,
    *,
    include_modular_twist: bool = True,
) -> ValidationReport:
    """Check partial_{phi + phi_vol}(dag F) = dag(delta_phi F).

    With ``include_modular_twist=False`` the chain side uses phi alone, which
    breaks the square whenever phi_vol is nonzero.
    """
    pres = ctx.pres
    derivation = (
        validate_poisson_derivation(poisson, phi) if isinstance(phi, Multivector) else phi
    )
    twist = derivation.phi if derivation is not None else Multivector.zero(pres, 1)
    if include_modular_twist:
        twist = twist + modular_derivation(poisson).phi
    report = ValidationReport(subject="duality square")
    with logfire.span("verify duality square", degree=F.degree, twisted=include_modular_twist):
        lhs = chain_partial(poisson, dag(ctx, F), PoissonDerivation(twist))
        delta = cochain_delta(poisson, F, derivation)
        rhs = dag(ctx, delta) if delta.degree <= ctx.n else KForm.zero(pres, 0)
        report.record(f"square[p={F.degree}]", lhs - rhs)
    return report
