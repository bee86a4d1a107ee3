"""Smooth-algebra presentations with dual-basis data.

A presentation bundles the ring R = Q[x1..xr]/(relations), the smooth
dimension n, the matrix E with E[i][j] = (dx_i)*(x_j), and volume data
vol = sum a_I dx_I, vol* = sum b_I (dx_I)*.

Forms and multivectors are stored as coefficients over the free exterior
algebra on r symbols. The q-th compound matrix of E (its q x q minors)
projects those coefficients onto canonical representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import TYPE_CHECKING, TypeAlias

import logfire

from poissonbv.algebra.ring import Poly, PolynomialRing, partial_terms, total
from poissonbv.core.errors import DegreeOutOfRangeError, IndexOutOfRangeError
from poissonbv.core.report import ValidationReport

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

Index: TypeAlias = tuple[int, ...]


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation, from its inversion count."""
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def determinant(matrix: Sequence[Sequence[Poly]], ring: PolynomialRing) -> Poly:
    """Leibniz determinant of a small square matrix of polynomials."""
    size = len(matrix)
    if size == 0:
        return ring.one
    terms: list[Poly] = []
    for perm in permutations(range(size)):
        product = ring.one.scale(permutation_sign(perm))
        for row, col in enumerate(perm):
            entry = matrix[row][col]
            if entry.is_zero():
                break
            product = product * entry
        else:
            terms.append(product)
    return total(terms, ring)


@dataclass(eq=False)
class SmoothPresentation:
    """A smooth algebra with trivial canonical bundle, given by dual-basis data.

    Attributes:
        ring: The polynomial ring with its rewrite rules
        n: Smooth dimension
        dual_matrix: E[i][j] = (dx_i)*(x_j), an r x r matrix of Poly
        volume_a: Sorted n-subsets I to a_I (vol = sum a_I dx_I)
        volume_b: Sorted n-subsets I to b_I (vol* = sum b_I (dx_I)*)
        name: Label used in reports

    Example:
        pres = SmoothPresentation.free(["x", "y"])
        pres.dual_derivation(1, pres.ring.gen(0) ** 2 * pres.ring.gen(1))  # x^2
    """

    ring: PolynomialRing
    n: int
    dual_matrix: tuple[tuple[Poly, ...], ...]
    volume_a: Mapping[Index, Poly]
    volume_b: Mapping[Index, Poly]
    name: str = ""
    _minors: dict[tuple[Index, Index], Poly] = field(default_factory=dict, repr=False)
    _subsets: dict[int, list[Index]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        r = self.ring.r
        if not 0 <= self.n <= r:
            msg = f"smooth dimension {self.n} outside 0..{r}"
            raise DegreeOutOfRangeError(msg, details={"n": self.n, "r": r})
        if len(self.dual_matrix) != r or any(len(row) != r for row in self.dual_matrix):
            msg = f"dual-basis matrix must be {r} x {r}"
            raise IndexOutOfRangeError(msg)
        for label, data in (("a", self.volume_a), ("b", self.volume_b)):
            for index in data:
                if len(index) != self.n or list(index) != sorted(set(index)):
                    msg = f"volume key {label}{index} is not a sorted {self.n}-subset"
                    raise IndexOutOfRangeError(msg)
                if index and not 0 <= index[-1] < r:
                    msg = f"volume key {label}{index} references an undeclared generator"
                    raise IndexOutOfRangeError(msg)
        self.identity_dual = all(
            self.dual_matrix[i][j] == (1 if i == j else 0) for i in range(r) for j in range(r)
        )

    @classmethod
    def free(cls, generators: Sequence[str], name: str = "") -> SmoothPresentation:
        """The free polynomial ring: E = identity, vol = dx_1 ^ ... ^ dx_r."""
        ring = PolynomialRing(generators)
        r = ring.r
        dual = tuple(
            tuple(ring.one if i == j else ring.zero for j in range(r)) for i in range(r)
        )
        top = tuple(range(r))
        return cls(ring, r, dual, {top: ring.one}, {top: ring.one}, name=name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SmoothPresentation):
            return NotImplemented
        return self is other or (
            self.ring == other.ring
            and self.n == other.n
            and self.dual_matrix == other.dual_matrix
            and dict(self.volume_a) == dict(other.volume_a)
            and dict(self.volume_b) == dict(other.volume_b)
        )

    __hash__ = None  # type: ignore[assignment]

    # --- basic data ---

    @property
    def r(self) -> int:
        """Number of generators."""
        return self.ring.r

    @property
    def generators(self) -> tuple[str, ...]:
        """Generator names."""
        return self.ring.generators

    @property
    def is_free(self) -> bool:
        """True for a polynomial ring with the identity dual basis and r = n."""
        return self.ring.is_free and self.identity_dual and self.n == self.r

    def subsets(self, q: int) -> list[Index]:
        """Sorted q-subsets of generator indices, in lexicographic order."""
        cached = self._subsets.get(q)
        if cached is None:
            cached = list(combinations(range(self.r), q)) if 0 <= q <= self.r else []
            self._subsets[q] = cached
        return cached

    def minor(self, rows: Index, cols: Index) -> Poly:
        """det E[rows, cols], memoized."""
        key = (rows, cols)
        cached = self._minors.get(key)
        if cached is None:
            if self.identity_dual:
                cached = self.ring.one if rows == cols else self.ring.zero
            else:
                matrix = [[self.dual_matrix[i][j] for j in cols] for i in rows]
                cached = determinant(matrix, self.ring)
            self._minors[key] = cached
        return cached

    # --- dual derivations ---

    def dual_derivation(self, i: int, a: Poly) -> Poly:
        """(dx_i)*(a) = sum_j E[i][j] * da/dx_j, in normal form.

        Raises:
            IndexOutOfRangeError: If ``i`` is not a generator index
        """
        self.ring.check_index(i)
        if self.identity_dual:
            return self.ring.poly(partial_terms(a.terms, i))
        parts = [
            self.dual_matrix[i][j] * self.ring.poly(partial_terms(a.terms, j))
            for j in range(self.r)
            if not self.dual_matrix[i][j].is_zero()
        ]
        return total(parts, self.ring)

    # --- canonical projection ---

    def canonical_form_coeffs(self, q: int, coeffs: Mapping[Index, Poly]) -> dict[Index, Poly]:
        """Project form coefficients: c'_K = sum_J det E[K,J] c_J.

        Raises:
            DegreeOutOfRangeError: If ``q < 0``
        """
        if q < 0:
            msg = f"form degree {q} is negative"
            raise DegreeOutOfRangeError(msg)
        if q > self.n:
            return {}
        if self.identity_dual:
            return {k: v for k, v in coeffs.items() if not v.is_zero()}
        return self._project(q, coeffs, transpose=False)

    def canonical_mv_coeffs(self, p: int, coeffs: Mapping[Index, Poly]) -> dict[Index, Poly]:
        """Project multivector coefficients: c'_K = sum_J c_J det E[J,K] = F(x_K).

        Raises:
            DegreeOutOfRangeError: If ``p < 0``
        """
        if p < 0:
            msg = f"multivector degree {p} is negative"
            raise DegreeOutOfRangeError(msg)
        if p > self.n:
            return {}
        if self.identity_dual:
            return {k: v for k, v in coeffs.items() if not v.is_zero()}
        return self._project(p, coeffs, transpose=True)

    def _project(
        self, q: int, coeffs: Mapping[Index, Poly], *, transpose: bool
    ) -> dict[Index, Poly]:
        live = [(j, c) for j, c in coeffs.items() if not c.is_zero()]
        out: dict[Index, Poly] = {}
        for k in self.subsets(q):
            parts = []
            for j, c in live:
                m = self.minor(j, k) if transpose else self.minor(k, j)
                if not m.is_zero():
                    parts.append(m * c)
            value = total(parts, self.ring)
            if not value.is_zero():
                out[k] = value
        return out

    def pair_coeffs(self, mv: Mapping[Index, Poly], form: Mapping[Index, Poly]) -> Poly:
        """Determinant pairing sum_{J,K} c_J(F) c_K(w) det E[J,K]."""
        parts = []
        for j, cj in mv.items():
            for k, ck in form.items():
                m = self.minor(j, k)
                if not m.is_zero():
                    parts.append(m * cj * ck)
        return total(parts, self.ring)

    # --- validation ---

    def validate(self) -> ValidationReport:
        """Run every presentation check; see ``validate_presentation``."""
        return validate_presentation(self)


def validate_presentation(pres: SmoothPresentation) -> ValidationReport:
    """Check the dual-basis and volume data.

    Checks: trace = n, sum a_I b_I = 1, E annihilates relation gradients,
    E idempotent, volume a/b consistency, pairing vol*(vol) = 1 and
    vanishing of all (n+1)-minors of E. Failures carry the nonzero residue.

    Args:
        pres: The presentation to validate

    Returns:
        A report; failures are recorded, never raised
    """
    ring = pres.ring
    r, n = pres.r, pres.n
    E = pres.dual_matrix
    report = ValidationReport(subject=f"presentation {pres.name}".strip())
    with logfire.span("validate presentation", name=pres.name, r=r, n=n):
        trace = total((E[i][i] for i in range(r)), ring)
        report.note(f"trace = {trace}")
        report.record("trace", trace - n)

        volume = total((a * pres.volume_b.get(k, ring.zero) for k, a in pres.volume_a.items()), ring)
        report.note(f"sum a_I*b_I = {volume}")
        report.record("volume", volume - 1)

        for rho_index, rho in enumerate(ring.relations()):
            gradient = [ring.poly(partial_terms(rho, j)) for j in range(r)]
            for i in range(r):
                residue = total((E[i][j] * gradient[j] for j in range(r)), ring)
                report.record(f"gradient[{rho_index + 1}, {ring.generators[i]}]", residue)

        for i in range(r):
            for j in range(r):
                square = total((E[i][k] * E[k][j] for k in range(r)), ring)
                report.record(
                    f"idempotency[{ring.generators[i]}, {ring.generators[j]}]", square - E[i][j]
                )

        vol_a = dict(pres.volume_a)
        vol_b = dict(pres.volume_b)
        canonical_a = pres.canonical_form_coeffs(n, vol_a)
        canonical_b = pres.canonical_mv_coeffs(n, vol_b)
        for index in pres.subsets(n):
            label = ",".join(ring.generators[i] for i in index)
            report.record(
                f"volume-a[{label}]", canonical_a.get(index, ring.zero) - vol_a.get(index, ring.zero)
            )
            report.record(
                f"volume-b[{label}]", canonical_b.get(index, ring.zero) - vol_b.get(index, ring.zero)
            )
        report.record("pairing", pres.pair_coeffs(vol_b, vol_a) - 1)

        if n < r:
            for rows in pres.subsets(n + 1):
                for cols in pres.subsets(n + 1):
                    if not report.record("top-degree", pres.minor(rows, cols)):
                        break
        logfire.debug(
            "presentation validated",
            name=pres.name,
            passed=report.passed,
            failures=len(report.failures),
        )
    return report


def dual_derivation(pres: SmoothPresentation, i: int, a: Poly) -> Poly:
    """(dx_i)*(a) for a 0-based generator index ``i``."""
    return pres.dual_derivation(i, a)


def scalar(pres: SmoothPresentation, c: int | Fraction) -> Poly:
    """Constant of the presentation's ring."""
    return pres.ring.constant(c)
