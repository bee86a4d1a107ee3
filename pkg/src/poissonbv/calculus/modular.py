"""Modular derivations and unimodularity witness searches."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import logfire

from poissonbv.algebra.exterior import KForm, Multivector, contract_form, contract_mv, de_rham, pair
from poissonbv.algebra.linalg import solve
from poissonbv.algebra.ring import Poly, total
from poissonbv.calculus.poisson import PoissonStructure, bracket, hamiltonian
from poissonbv.config import get_settings
from poissonbv.core.errors import DivisionInconsistentError, PresentationMismatchError

if TYPE_CHECKING:
    from collections.abc import Hashable, Mapping, Sequence

    from poissonbv.algebra.presentation import SmoothPresentation
    from poissonbv.algebra.ring import Monomial


@dataclass(frozen=True)
class ModularData:
    """The modular derivation phi = phi1 + phi2 of (pi, vol).

    Attributes:
        phi: The modular derivation
        phi1: a -> sum_s (dx_s)*({a, x_s})
        phi2: a -> sum_I {a, a_I} b_I
    """

    phi: Multivector
    phi1: Multivector
    phi2: Multivector


def _check_presentation(poisson: PoissonStructure, pres: SmoothPresentation | None) -> SmoothPresentation:
    if pres is not None and pres is not poisson.pres and pres != poisson.pres:
        msg = "the Poisson structure lives on a different presentation"
        raise PresentationMismatchError(msg)
    return poisson.pres


def modular_derivation(poisson: PoissonStructure, pres: SmoothPresentation | None = None) -> ModularData:
    """Modular derivation from the dual-basis formula, evaluated on generators."""
    pres = _check_presentation(poisson, pres)
    ring = pres.ring
    gens = ring.gens
    first: dict[tuple[int, ...], Poly] = {}
    second: dict[tuple[int, ...], Poly] = {}
    for j, xj in enumerate(gens):
        first[(j,)] = total(
            (pres.dual_derivation(s, bracket(poisson, xj, xs)) for s, xs in enumerate(gens)), ring
        )
        second[(j,)] = total(
            (
                bracket(poisson, xj, a) * pres.volume_b.get(index, ring.zero)
                for index, a in pres.volume_a.items()
            ),
            ring,
        )
    phi1 = Multivector.from_values(pres, 1, first)
    phi2 = Multivector.from_values(pres, 1, second)
    return ModularData(phi=phi1 + phi2, phi1=phi1, phi2=phi2)


def modular_oracle(poisson: PoissonStructure, a: Poly, pres: SmoothPresentation | None = None) -> Poly:
    """L_{H_a}(vol) / vol, divided through the pairing with vol*.

    Raises:
        DivisionInconsistentError: If L_{H_a}(vol) is not c*vol for c = vol*(L_{H_a} vol)
    """
    pres = _check_presentation(poisson, pres)
    vol = KForm.volume(pres)
    # the iota d term vanishes on a top form
    lie = de_rham(contract_form(hamiltonian(poisson, a), vol))
    c = pair(Multivector.covolume(pres), lie)
    residue = lie - vol.scale(c)
    if not residue.is_zero():
        msg = f"L_H(vol) is not a multiple of vol: residue {residue}"
        raise DivisionInconsistentError(msg, details={"residue": str(residue)})
    return c


# --- bounded-degree linear searches ---


def _monomials_up_to(pres: SmoothPresentation, degree: int) -> list[Monomial]:
    out: list[Monomial] = []
    for d in range(degree + 1):
        out.extend(pres.ring.monomials_of_degree(d))
    return out


def _flatten(blocks: Sequence[tuple[str, Mapping[tuple[int, ...], Poly]]]) -> dict[Hashable, Fraction]:
    flat: dict[Hashable, Fraction] = {}
    for label, coeffs in blocks:
        for index, poly in coeffs.items():
            for mono, c in poly.terms.items():
                flat[label, index, mono] = c
    return flat


def _solve_columns(
    columns: Sequence[dict[Hashable, Fraction]], target: dict[Hashable, Fraction]
) -> list[Fraction] | None:
    keys: dict[Hashable, int] = {}
    for column in (*columns, target):
        for key in column:
            keys.setdefault(key, len(keys))
    rows = [[Fraction(0)] * len(columns) for _ in keys]
    for col, column in enumerate(columns):
        for key, c in column.items():
            rows[keys[key]][col] = c
    rhs = [Fraction(0)] * len(keys)
    for key, c in target.items():
        rhs[keys[key]] = c
    return solve(rows, rhs, len(columns))


def hamiltonian_witness(
    poisson: PoissonStructure, target: Multivector, max_degree: int | None = None
) -> Poly | None:
    """Some u with deg u <= D and H_u = target, or None.

    The bound grows from 0 to D; the first solvable system wins, with free
    unknowns set to zero.
    """
    pres = poisson.pres
    bound = get_settings().witness_max_degree if max_degree is None else max_degree
    goal = _flatten([("mv", target.coeffs)])
    with logfire.span("hamiltonian witness search", max_degree=bound):
        for k in range(bound + 1):
            monomials = _monomials_up_to(pres, k)
            units = [pres.ring.monomial(m) for m in monomials]
            columns = [_flatten([("mv", hamiltonian(poisson, u).coeffs)]) for u in units]
            solution = _solve_columns(columns, goal)
            if solution is None:
                continue
            u = total((unit.scale(c) for unit, c in zip(units, solution, strict=True)), pres.ring)
            if hamiltonian(poisson, u) == target:
                logfire.debug("hamiltonian witness found", degree=k, witness=str(u))
                return u
        logfire.debug("no hamiltonian witness", max_degree=bound)
    return None


def pseudo_unimodular_witness(
    poisson: PoissonStructure,
    pres: SmoothPresentation | None = None,
    max_degree: int | None = None,
) -> KForm | None:
    """A closed 1-form varpi with iota_varpi(pi) = phi_vol, coefficients of degree <= D, or None."""
    pres = _check_presentation(poisson, pres)
    bound = get_settings().witness_max_degree if max_degree is None else max_degree
    phi = modular_derivation(poisson).phi
    goal = _flatten([("mv", phi.coeffs)])
    with logfire.span("pseudo-unimodular witness search", max_degree=bound):
        for k in range(bound + 1):
            basis = [
                KForm(pres, 1, {(i,): pres.ring.monomial(m)})
                for i in range(pres.r)
                for m in _monomials_up_to(pres, k)
            ]
            columns = [
                _flatten([("mv", contract_mv(w, poisson.pi).coeffs), ("form", de_rham(w).coeffs)])
                for w in basis
            ]
            solution = _solve_columns(columns, goal)
            if solution is None:
                continue
            varpi = KForm.zero(pres, 1)
            for w, c in zip(basis, solution, strict=True):
                if c:
                    varpi = varpi + w.scale(c)
            if contract_mv(varpi, poisson.pi) == phi and de_rham(varpi).is_zero():
                logfire.debug("pseudo-unimodular witness found", degree=k, witness=str(varpi))
                return varpi
        logfire.debug("no pseudo-unimodular witness", max_degree=bound)
    return None
