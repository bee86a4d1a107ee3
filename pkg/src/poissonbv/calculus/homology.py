"""Graded dimensions of Poisson cohomology and twisted Poisson homology.

For a free presentation whose brackets {x_i, x_j} are homogeneous of one
common degree w, delta maps multivectors with coefficient degree d to
coefficient degree d + w - 1 and one degree up; the partial differential
does the same one degree down on forms. Each (degree, coefficient degree)
piece is finite-dimensional, so kernels and images are computed exactly.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import TYPE_CHECKING, Literal

import logfire
from pydantic import BaseModel, ConfigDict

from poissonbv.algebra.exterior import KForm, Multivector
from poissonbv.algebra.linalg import rank
from poissonbv.algebra.ring import Poly
from poissonbv.calculus.modular import modular_derivation
from poissonbv.calculus.poisson import (
    PoissonDerivation,
    PoissonStructure,
    chain_partial,
    cochain_delta,
    validate_poisson_derivation,
)
from poissonbv.config import get_settings
from poissonbv.core.errors import NotFreePresentationError, NotGradedError
from poissonbv.core.report import ValidationReport

if TYPE_CHECKING:
    from collections.abc import Hashable, Iterable, Sequence

StrandKind = Literal["cohomology", "homology"]


class StrandEntry(BaseModel):
    """Dimensions at one (degree, coefficient degree) position."""

    model_config = ConfigDict(frozen=True)

    domain: int
    kernel: int
    image: int

    @property
    def homology(self) -> int:
        """dim kernel - dim image-in."""
        return self.kernel - self.image


class StrandTable(BaseModel):
    """Dimensions keyed by (degree, coefficient degree), in request order."""

    kind: StrandKind
    weight: int
    entries: dict[tuple[int, int], StrandEntry]

    def homology(self, degree: int, coefficient_degree: int) -> int:
        """dim of (co)homology at one position."""
        return self.entries[degree, coefficient_degree].homology

    def strand(self, key: tuple[int, int]) -> int:
        """Strand label d - p(w-1) for cochains, d + q(w-1) for chains."""
        degree, d = key
        shift = degree * (self.weight - 1)
        return d - shift if self.kind == "cohomology" else d + shift

    def render(self, fmt: Literal["text", "lines"] = "text") -> str:
        """Aligned text, or one ``p d dim_ker dim_im dim_H`` line per entry."""
        if fmt == "lines":
            return "\n".join(
                f"{p} {d} {e.kernel} {e.image} {e.homology}" for (p, d), e in self.entries.items()
            )
        label = "p" if self.kind == "cohomology" else "q"
        header = f"{label:>3} {'d':>3} {'ker':>5} {'im':>5} {'H':>5}"
        rows = [
            f"{p:>3} {d:>3} {e.kernel:>5} {e.image:>5} {e.homology:>5}"
            for (p, d), e in self.entries.items()
        ]
        return "\n".join([header, *rows])


def bracket_weight(poisson: PoissonStructure) -> int:
    """The common degree w of all nonzero brackets (1 for the zero structure).

    Raises:
        NotFreePresentationError: For quotient rings
        NotGradedError: If the brackets are not homogeneous of one degree
    """
    if not poisson.pres.is_free:
        msg = "strand tables are computed on free polynomial presentations"
        raise NotFreePresentationError(msg)
    degrees: set[int] = set()
    for (i, j), value in poisson.table.items():
        if not value.is_homogeneous():
            names = poisson.pres.generators
            msg = f"{{{names[i]}, {names[j]}}} = {value} is not homogeneous"
            raise NotGradedError(msg)
        degrees.add(value.degree())
    if len(degrees) > 1:
        msg = f"brackets have mixed degrees {sorted(degrees)}"
        raise NotGradedError(msg, details={"degrees": sorted(degrees)})
    return degrees.pop() if degrees else 1


def _check_twist(phi: Multivector | None, weight: int) -> None:
    if phi is None:
        return
    for coeff in phi.coeffs.values():
        if not coeff.is_homogeneous() or coeff.degree() != weight - 1:
            msg = f"the twist {phi} is not homogeneous of coefficient degree {weight - 1}"
            raise NotGradedError(msg)


def _index_monomials(
    poisson: PoissonStructure, degree: int, d: int
) -> list[tuple[tuple[int, ...], Poly]]:
    pres = poisson.pres
    if not 0 <= degree <= pres.n:
        return []
    monomials = [pres.ring.monomial(m) for m in pres.ring.monomials_of_degree(d)]
    return [(j, m) for j in combinations(range(pres.r), degree) for m in monomials]


def dimension(poisson: PoissonStructure, degree: int, d: int) -> int:
    """dim of the degree-``degree`` piece with coefficient degree d."""
    pres = poisson.pres
    if not 0 <= degree <= pres.n or d < 0:
        return 0
    return comb(pres.r, degree) * len(pres.ring.monomials_of_degree(d))


def _outgoing_rank(
    task: tuple[PoissonStructure, Multivector | None, StrandKind, int, int],
) -> int:
    poisson, phi, kind, degree, d = task
    if d < 0:
        return 0
    pres = poisson.pres
    twist = PoissonDerivation(phi) if phi is not None else None
    images: list[dict[Hashable, Fraction]] = []
    for j, m in _index_monomials(poisson, degree, d):
        if kind == "cohomology":
            element = Multivector(pres, degree, {j: m}, canonical=True)
            image = cochain_delta(poisson, element, twist).coeffs
        else:
            form = KForm(pres, degree, {j: m}, canonical=True)
            image = chain_partial(poisson, form, twist).coeffs
        images.append({(k, mono): c for k, v in image.items() for mono, c in v.terms.items()})
    keys: dict[Hashable, int] = {}
    for image in images:
        for key in image:
            keys.setdefault(key, len(keys))
    rows = [[Fraction(0)] * len(images) for _ in keys]
    for col, image in enumerate(images):
        for key, c in image.items():
            rows[keys[key]][col] = c
    return rank(rows, len(images))


def _tabulate(
    poisson: PoissonStructure,
    phi: PoissonDerivation | Multivector | None,
    kind: StrandKind,
    degrees: Iterable[int],
    coefficient_degrees: Iterable[int],
    workers: int | None,
) -> StrandTable:
    weight = bracket_weight(poisson)
    if isinstance(phi, Multivector):
        phi = validate_poisson_derivation(poisson, phi)
    twist = phi.phi if phi is not None else None
    _check_twist(twist, weight)
    positions = [(p, d) for p in degrees for d in coefficient_degrees]
    # the image into (p, d) comes from one degree below (cohomology) or above (homology)
    step = -1 if kind == "cohomology" else 1
    needed: list[tuple[int, int]] = []
    for p, d in positions:
        for key in ((p, d), (p + step, d - (weight - 1))):
            if key not in needed:
                needed.append(key)
    tasks = [(poisson, twist, kind, p, d) for p, d in needed]
    count = workers or get_settings().strand_workers
    with logfire.span("strand table", kind=kind, positions=len(positions), workers=count):
        if count > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=count) as pool:
                ranks = list(pool.map(_outgoing_rank, tasks))
        else:
            ranks = [_outgoing_rank(task) for task in tasks]
    outgoing = dict(zip(needed, ranks, strict=True))
    entries: dict[tuple[int, int], StrandEntry] = {}
    for p, d in positions:
        dim = dimension(poisson, p, d)
        kernel = dim - outgoing[p, d]
        image = outgoing[p + step, d - (weight - 1)]
        entries[p, d] = StrandEntry(domain=dim, kernel=kernel, image=image)
    return StrandTable(kind=kind, weight=weight, entries=entries)


def cohomology_dims(
    poisson: PoissonStructure,
    phi: PoissonDerivation | Multivector | None,
    p_range: Iterable[int],
    d_range: Iterable[int],
    *,
    workers: int | None = None,
) -> StrandTable:
    """dim PH^p(R, R_phi) at each coefficient degree d.

    Raises:
        NotFreePresentationError: For quotient rings
        NotGradedError: For inhomogeneous brackets or twist
    """
    return _tabulate(poisson, phi, "cohomology", p_range, list(d_range), workers)


def homology_dims(
    poisson: PoissonStructure,
    phi: PoissonDerivation | Multivector | None,
    q_range: Iterable[int],
    d_range: Iterable[int],
    *,
    workers: int | None = None,
) -> StrandTable:
    """dim PH_q(R, R_phi) at each coefficient degree d.

    Raises:
        NotFreePresentationError: For quotient rings
        NotGradedError: For inhomogeneous brackets or twist
    """
    return _tabulate(poisson, phi, "homology", q_range, list(d_range), workers)


def duality_dim_check(
    poisson: PoissonStructure,
    p_range: Sequence[int],
    d_range: Sequence[int],
    *,
    twisted: bool = True,
    workers: int | None = None,
) -> ValidationReport:
    """Compare dim PH^p(R) with dim PH_{n-p}(R, R_t) at equal coefficient degree.

    With ``twisted=False`` the homology side is untwisted, which is expected
    to disagree when the modular derivation is nonzero.
    """
    n = poisson.pres.n
    phi = PoissonDerivation(modular_derivation(poisson).phi) if twisted else None
    ps = [p for p in p_range if 0 <= p <= n]
    cohomology = cohomology_dims(poisson, None, ps, d_range, workers=workers)
    homology = homology_dims(poisson, phi, [n - p for p in ps], d_range, workers=workers)
    report = ValidationReport(subject="duality dimensions" + ("" if twisted else " (untwisted)"))
    for p in ps:
        for d in d_range:
            upper = cohomology.homology(p, d)
            lower = homology.homology(n - p, d)
            check = f"dims[p={p}, d={d}]"
            if upper == lower:
                report.checks.append(check)
            else:
                report.fail(check, f"PH^{p} = {upper}, PH_{n - p} = {lower}")
    return report


def euler_characteristic(table: StrandTable, strand: int) -> tuple[int, int]:
    """Alternating sums over one strand.

    Returns:
        ``(sum (-1)^p dim domain, sum (-1)^p dim homology)``; they agree
        whenever the table covers the whole strand
    """
    chain = homology_sum = 0
    for key, entry in table.entries.items():
        if table.strand(key) != strand:
            continue
        sign = -1 if key[0] % 2 else 1
        chain += sign * entry.domain
        homology_sum += sign * entry.homology
    return chain, homology_sum
