"""Poisson structures and the Poisson (co)chain differentials.

Coefficient modules are rank-one twists R_phi of R by a Poisson derivation
phi, with bracket {m, a}_phi = {m, a} + m*phi(a). The twist enters both
differentials as delta_phi = delta - phi ^ (-) and partial_phi = partial + iota_phi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import TYPE_CHECKING

import logfire

from poissonbv.algebra.exterior import (
    KForm,
    Multivector,
    contract_form,
    contract_mv,
    d_twisted,
    de_rham,
    form_wedge,
    mv_apply,
    mv_wedge,
    schouten,
)
from poissonbv.algebra.linalg import nullspace
from poissonbv.algebra.ring import Poly, partial_terms, total
from poissonbv.core.errors import (
    DegreeMismatchError,
    IndexOutOfRangeError,
    NotClosedError,
    NotFreePresentationError,
    NotPoissonDerivationError,
)
from poissonbv.core.report import ValidationReport

if TYPE_CHECKING:
    from collections.abc import Mapping

    from poissonbv.algebra.presentation import SmoothPresentation

BracketTable = dict[tuple[int, int], Poly]


@dataclass(frozen=True, eq=False)
class PoissonStructure:
    """A bivector pi with its generator bracket table {x_i, x_j}, i < j.

    Construct with ``from_table``; run ``validate_poisson`` before trusting
    the Jacobi identity.
    """

    pres: SmoothPresentation
    pi: Multivector
    table: BracketTable

    @classmethod
    def from_table(
        cls, pres: SmoothPresentation, table: Mapping[tuple[int, int], Poly]
    ) -> PoissonStructure:
        """Build pi = sum_{i<j} {x_i, x_j} (dx_i)* ^ (dx_j)*, canonicalized.

        Keys (j, i) with j > i are stored as (i, j) with the sign flipped.

        Raises:
            IndexOutOfRangeError: For a diagonal or undeclared index pair
        """
        normalized: BracketTable = {}
        for (i, j), value in table.items():
            pres.ring.check_index(i)
            pres.ring.check_index(j)
            if i == j:
                msg = f"bracket of a generator with itself: ({i}, {j})"
                raise IndexOutOfRangeError(msg)
            key, entry = ((i, j), value) if i < j else ((j, i), -value)
            if key in normalized:
                msg = f"bracket {{{pres.generators[key[0]]}, {pres.generators[key[1]]}}} given twice"
                raise IndexOutOfRangeError(msg)
            if not entry.is_zero():
                normalized[key] = entry
        pi = Multivector(pres, 2, dict(normalized))
        return cls(pres, pi, normalized)

    @classmethod
    def zero(cls, pres: SmoothPresentation) -> PoissonStructure:
        """The zero Poisson structure."""
        return cls(pres, Multivector.zero(pres, 2), {})

    def generator_bracket(self, i: int, j: int) -> Poly:
        """{x_i, x_j} read from the table."""
        if i == j:
            return self.pres.ring.zero
        if i < j:
            return self.table.get((i, j), self.pres.ring.zero)
        return -self.table.get((j, i), self.pres.ring.zero)

    def is_zero(self) -> bool:
        """True when every bracket vanishes."""
        return self.pi.is_zero() and not self.table


@dataclass(frozen=True)
class PoissonDerivation:
    """A 1-multivector phi with [pi, phi] = 0, checked at construction by ``validate_poisson_derivation``."""

    phi: Multivector


def bracket(poisson: PoissonStructure, a: Poly, b: Poly) -> Poly:
    """{a, b} = pi(a, b)."""
    return mv_apply(poisson.pi, [a, b])


def jacobiator(poisson: PoissonStructure, a: Poly, b: Poly, c: Poly) -> Poly:
    """{{a,b},c} + {{b,c},a} + {{c,a},b}."""
    return (
        bracket(poisson, bracket(poisson, a, b), c)
        + bracket(poisson, bracket(poisson, b, c), a)
        + bracket(poisson, bracket(poisson, c, a), b)
    )


def validate_poisson(
    table: Mapping[tuple[int, int], Poly], pres: SmoothPresentation, name: str = ""
) -> ValidationReport:
    """Check a candidate bracket table.

    Checks: the canonical bivector reproduces the table, the Jacobi identity
    on generator triples, {rho, x_j} = 0 for each relation rho, and
    [pi, pi] = 0 through the Schouten bracket.
    """
    poisson = PoissonStructure.from_table(pres, table)
    ring = pres.ring
    names = ring.generators
    report = ValidationReport(subject=f"poisson {name}".strip())
    with logfire.span("validate poisson", name=name, entries=len(poisson.table)):
        for i, j in combinations(range(pres.r), 2):
            stored = poisson.generator_bracket(i, j)
            report.record(
                f"table[{names[i]}, {names[j]}]", poisson.pi.value_on((i, j)) - stored
            )
        gens = ring.gens
        for i, j, k in combinations(range(pres.r), 3):
            report.record(
                f"jacobi[{names[i]}, {names[j]}, {names[k]}]",
                jacobiator(poisson, gens[i], gens[j], gens[k]),
            )
        for rho_index, rho in enumerate(ring.relations()):
            for j in range(pres.r):
                # the relation is a free-ring representative, so expand by the chain rule
                value = total(
                    (
                        ring.poly(partial_terms(rho, i)) * poisson.generator_bracket(i, j)
                        for i in range(pres.r)
                    ),
                    ring,
                )
                report.record(f"relation[{rho_index + 1}, {names[j]}]", value)
        report.record("schouten[pi, pi]", schouten(poisson.pi, poisson.pi))
        logfire.debug("poisson validated", name=name, passed=report.passed)
    return report


def hamiltonian(poisson: PoissonStructure, a: Poly) -> Multivector:
    """H_a = {a, -}, assembled from H_a(x_j) = {a, x_j}."""
    pres = poisson.pres
    values = {(j,): bracket(poisson, a, x) for j, x in enumerate(pres.ring.gens)}
    return Multivector.from_values(pres, 1, values)


def validate_poisson_derivation(poisson: PoissonStructure, phi: Multivector) -> PoissonDerivation:
    """Wrap phi after checking [pi, phi] = 0.

    Raises:
        DegreeMismatchError: If phi is not a 1-multivector
        NotPoissonDerivationError: If [pi, phi] != 0
    """
    if phi.degree != 1:
        msg = f"a Poisson derivation is a 1-multivector, got degree {phi.degree}"
        raise DegreeMismatchError(msg)
    residue = schouten(poisson.pi, phi)
    if not residue.is_zero():
        msg = f"[pi, phi] = {residue} is not zero"
        raise NotPoissonDerivationError(msg, details={"residue": str(residue)})
    return PoissonDerivation(phi)


def _derivation(
    poisson: PoissonStructure, phi: PoissonDerivation | Multivector | None
) -> Multivector | None:
    if phi is None:
        return None
    if isinstance(phi, PoissonDerivation):
        return phi.phi
    return validate_poisson_derivation(poisson, phi).phi


def cochain_delta(
    poisson: PoissonStructure,
    F: Multivector,
    phi: PoissonDerivation | Multivector | None = None,
) -> Multivector:
    """delta_phi(F) = [pi, F] - phi ^ F.

    Raises:
        NotPoissonDerivationError: If a bare multivector phi fails [pi, phi] = 0
    """
    twist = _derivation(poisson, phi)
    result = schouten(poisson.pi, F)
    if twist is not None:
        result = result - mv_wedge(twist, F)
    return result


def chain_partial(
    poisson: PoissonStructure,
    omega: KForm,
    phi: PoissonDerivation | Multivector | None = None,
) -> KForm:
    """partial_phi(omega) = iota_pi(d omega) - d(iota_pi omega) + iota_phi(omega).

    A 0-form maps to the zero 0-form.
    """
    twist = _derivation(poisson, phi)
    pres = poisson.pres
    q = omega.degree
    if q == 0:
        return KForm.zero(pres, 0)
    result = contract_form(poisson.pi, de_rham(omega))
    if q >= 2:
        result = result - de_rham(contract_form(poisson.pi, omega))
    if twist is not None:
        result = result + contract_form(twist, omega)
    return result


def twisted_chain_partial(poisson: PoissonStructure, varpi: KForm, omega: KForm) -> KForm:
    """partial_t(omega) = iota_pi(d_t omega) - d_t(iota_pi omega) for a closed 1-form varpi."""
    pres = poisson.pres
    q = omega.degree
    if q == 0:
        return KForm.zero(pres, 0)
    result = contract_form(poisson.pi, d_twisted(varpi, omega))
    if q >= 2:
        result = result - d_twisted(varpi, contract_form(poisson.pi, omega))
    return result


# --- direct formulas ---


def _module_bracket(poisson: PoissonStructure, twist: Multivector | None, m: Poly, a: Poly) -> Poly:
    value = bracket(poisson, m, a)
    if twist is not None:
        value = value + m * mv_apply(twist, [a])
    return value


def cochain_delta_direct(
    poisson: PoissonStructure,
    F: Multivector,
    phi: PoissonDerivation | Multivector | None = None,
) -> Multivector:
    """delta_phi(F) from its defining alternating sum, evaluated on generator tuples.

    delta(F)(a_1..a_{p+1}) = sum_i (-1)^i {F(..no a_i..), a_i}_phi
    + sum_{i<j} (-1)^{i+j} F({a_i, a_j}, ..no a_i, a_j..), with 1-based i, j.
    """
    twist = _derivation(poisson, phi)
    pres = poisson.pres
    p = F.degree
    gens = pres.ring.gens
    values: dict[tuple[int, ...], Poly] = {}
    for k in pres.subsets(p + 1):
        args = [gens[i] for i in k]
        parts = []
        for i in range(p + 1):
            rest = args[:i] + args[i + 1 :]
            term = _module_bracket(poisson, twist, mv_apply(F, rest), args[i])
            parts.append(term.scale(-1 if (i + 1) % 2 else 1))
        for i, j in combinations(range(p + 1), 2):
            rest = [a for t, a in enumerate(args) if t not in (i, j)]
            term = mv_apply(F, [bracket(poisson, args[i], args[j]), *rest])
            parts.append(term.scale(-1 if (i + j) % 2 else 1))
        value = total(parts, pres.ring)
        if not value.is_zero():
            values[k] = value
    return Multivector.from_values(pres, p + 1, values)


def chain_partial_direct(
    poisson: PoissonStructure,
    omega: KForm,
    phi: PoissonDerivation | Multivector | None = None,
) -> KForm:
    """partial_phi(omega) from its defining alternating sum on each term m dx_K.

    partial(m da_1..da_q) = sum_i (-1)^{i-1} {m, a_i}_phi da_1..(no i)..da_q
    + sum_{i<j} (-1)^{i+j} m d{a_i, a_j} ^ da_1..(no i, j)..da_q.
    """
    twist = _derivation(poisson, phi)
    pres = poisson.pres
    q = omega.degree
    result = KForm.zero(pres, max(q - 1, 0))
    if q == 0:
        return result
    gens = pres.ring.gens
    for k, m in omega.coeffs.items():
        for i in range(q):
            rest = k[:i] + k[i + 1 :]
            coeff = _module_bracket(poisson, twist, m, gens[k[i]])
            result = result + KForm(pres, q - 1, {rest: coeff.scale(-1 if i % 2 else 1)})
        for i, j in combinations(range(q), 2):
            rest = tuple(x for t, x in enumerate(k) if t not in (i, j))
            d_bracket = de_rham(KForm.scalar(pres, bracket(poisson, gens[k[i]], gens[k[j]])))
            term = form_wedge(d_bracket, KForm(pres, q - 2, {rest: m}))
            result = result + term.scale(-1 if (i + j) % 2 else 1)
    return result


# --- derived constructions ---


def casimir_basis(poisson: PoissonStructure, degree: int) -> list[Poly]:
    """Basis of the homogeneous Casimirs of one degree (kernel of a -> H_a).

    Raises:
        NotFreePresentationError: For quotient rings
    """
    pres = poisson.pres
    if not pres.is_free:
        msg = "Casimir search runs on free polynomial presentations"
        raise NotFreePresentationError(msg)
    ring = pres.ring
    monomials = ring.monomials_of_degree(degree)
    images = [hamiltonian(poisson, ring.monomial(m)) for m in monomials]
    rows_index: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
    entries: dict[tuple[int, int], Fraction] = {}
    for col, image in enumerate(images):
        for key, coeff in image.coeffs.items():
            for mono, c in coeff.terms.items():
                row = rows_index.setdefault((key, mono), len(rows_index))
                entries[row, col] = c
    width = len(monomials)
    rows = [
        [entries.get((row, col), Fraction(0)) for col in range(width)]
        for row in range(len(rows_index))
    ]
    basis = nullspace(rows, width)
    return [ring.poly(dict(zip(monomials, vector, strict=True))) for vector in basis]


def derivation_from_closed_form(poisson: PoissonStructure, varpi: KForm) -> PoissonDerivation:
    """phi = iota_varpi(pi) for a closed 1-form varpi; always a Poisson derivation.

    Raises:
        NotClosedError: If d(varpi) != 0
    """
    require_closed(varpi)
    return PoissonDerivation(contract_mv(varpi, poisson.pi))


def require_closed(varpi: KForm) -> None:
    """Reject a twist 1-form that is not a de Rham cocycle.

    Raises:
        DegreeMismatchError: If varpi is not a 1-form
        NotClosedError: If d(varpi) != 0
    """
    if varpi.degree != 1:
        msg = f"the twist must be a 1-form, got degree {varpi.degree}"
        raise DegreeMismatchError(msg)
    differential = de_rham(varpi)
    if not differential.is_zero():
        msg = f"d({varpi}) = {differential} is not zero"
        raise NotClosedError(msg, details={"differential": str(differential)})
