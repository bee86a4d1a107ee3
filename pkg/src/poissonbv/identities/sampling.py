"""Seeded random instances for the identity suites.

Every generator takes an explicit ``random.Random`` so a suite run is
reproducible from its seed alone.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import TYPE_CHECKING

from poissonbv.algebra.exterior import KForm, Multivector, de_rham
from poissonbv.algebra.ring import Poly
from poissonbv.calculus.modular import modular_derivation
from poissonbv.calculus.poisson import PoissonDerivation, hamiltonian

if TYPE_CHECKING:
    from poissonbv.algebra.presentation import SmoothPresentation
    from poissonbv.calculus.poisson import PoissonStructure

COEFFICIENTS = (-3, -2, -1, 1, 2, 3)


def seeded(seed: int, *labels: str) -> random.Random:
    """A generator keyed by a base seed and labels such as identity and structure names."""
    return random.Random("/".join([str(seed), *labels]))


def random_poly(rng: random.Random, pres: SmoothPresentation, max_degree: int, terms: int = 3) -> Poly:
    """A sum of up to ``terms`` normal monomials of degree <= max_degree with small coefficients."""
    ring = pres.ring
    pool = [m for d in range(max_degree + 1) for m in ring.monomials_of_degree(d)]
    chosen: dict[tuple[int, ...], Fraction] = {}
    for _ in range(rng.randint(1, terms)):
        m = rng.choice(pool)
        chosen[m] = chosen.get(m, Fraction(0)) + rng.choice(COEFFICIENTS)
    return ring.poly(chosen)


def _random_coeffs(
    rng: random.Random, pres: SmoothPresentation, degree: int, max_degree: int, terms: int
) -> dict[tuple[int, ...], Poly]:
    indices = list(combinations(range(pres.r), degree))
    if not indices:
        return {}
    coeffs: dict[tuple[int, ...], Poly] = {}
    for _ in range(rng.randint(1, terms)):
        index = rng.choice(indices)
        value = random_poly(rng, pres, max_degree, terms=2)
        coeffs[index] = coeffs[index] + value if index in coeffs else value
    return coeffs


def random_form(
    rng: random.Random, pres: SmoothPresentation, degree: int, max_degree: int, terms: int = 2
) -> KForm:
    """A random canonical form of the given degree."""
    return KForm(pres, degree, _random_coeffs(rng, pres, degree, max_degree, terms))


def random_multivector(
    rng: random.Random, pres: SmoothPresentation, degree: int, max_degree: int, terms: int = 2
) -> Multivector:
    """A random canonical multivector of the given degree."""
    return Multivector(pres, degree, _random_coeffs(rng, pres, degree, max_degree, terms))


def random_closed_form(rng: random.Random, pres: SmoothPresentation, max_degree: int) -> KForm:
    """df plus a constant-coefficient 1-form; always closed."""
    ring = pres.ring
    exact = de_rham(KForm.scalar(pres, random_poly(rng, pres, max_degree)))
    constant = {(i,): ring.constant(rng.choice((0, *COEFFICIENTS))) for i in range(pres.r)}
    return exact + KForm(pres, 1, constant)


def random_poisson_derivation(
    rng: random.Random, poisson: PoissonStructure, max_degree: int
) -> PoissonDerivation:
    """H_a + c*phi_vol for random a and c; a Poisson derivation for any Poisson structure."""
    pres = poisson.pres
    phi = hamiltonian(poisson, random_poly(rng, pres, max_degree))
    c = rng.choice((0, *COEFFICIENTS))
    if c:
        phi = phi + modular_derivation(poisson).phi.scale(c)
    return PoissonDerivation(phi)


def random_monomial_index(
    rng: random.Random, pres: SmoothPresentation, degree: int, max_degree: int
) -> tuple[Poly, tuple[int, ...]]:
    """A random monomial coefficient with an unsorted-free index tuple of the given size."""
    ring = pres.ring
    pool = [m for d in range(max_degree + 1) for m in ring.monomials_of_degree(d)]
    index = tuple(sorted(rng.sample(range(pres.r), degree)))
    return ring.monomial(rng.choice(pool), rng.choice(COEFFICIENTS)), index
