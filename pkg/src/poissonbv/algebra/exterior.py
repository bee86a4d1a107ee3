"""Exterior calculus over a smooth presentation.

Forms and multivectors keep coefficients over the free exterior algebra on
the r generator symbols, keyed by sorted 0-based index tuples, and are always
held canonical: constructors project onto the canonical representative, and
R-linear operations preserve it. For a canonical multivector F the
coefficient on K equals F evaluated on the generators x_K, which is what the
evaluation-based operations here rely on.
"""

from __future__ import annotations

from itertools import combinations
from typing import TYPE_CHECKING, Self, TypeAlias

from poissonbv.algebra.expressions import parse_graded, render_graded, sort_with_sign
from poissonbv.algebra.presentation import SmoothPresentation, determinant
from poissonbv.algebra.ring import Poly, total
from poissonbv.core.errors import (
    ArityMismatchError,
    DegreeMismatchError,
    DegreeOutOfRangeError,
    PresentationMismatchError,
)

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping, Sequence
    from fractions import Fraction


Index: TypeAlias = tuple[int, ...]


def shuffles(length: int, first: int) -> Iterator[tuple[int, Index, Index]]:
    """Enumerate (first, length - first)-shuffles of positions 0..length-1.

    Yields:
        ``(sign, A, B)`` with A the sorted first block and B its complement
    """
    positions = range(length)
    for block in combinations(positions, first):
        rest = tuple(i for i in positions if i not in block)
        sign = -1 if sum(a - k for k, a in enumerate(block)) % 2 else 1
        yield sign, block, rest


def _check_same(a: SmoothPresentation, b: SmoothPresentation) -> None:
    if a is not b and a != b:
        msg = "operands belong to different presentations"
        raise PresentationMismatchError(msg)


class _Graded:
    """Shared storage for canonical forms and multivectors."""

    kind: str = ""

    __slots__ = ("coeffs", "degree", "pres")

    def __init__(
        self,
        pres: SmoothPresentation,
        degree: int,
        coeffs: Mapping[Index, Poly],
        *,
        canonical: bool = False,
    ) -> None:
        if degree < 0:
            msg = f"degree {degree} is negative"
            raise DegreeOutOfRangeError(msg, details={"degree": degree})
        self.pres = pres
        self.degree = degree
        if canonical:
            self.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}
        else:
            self.coeffs = self._canonicalize(pres, degree, coeffs)

    @staticmethod
    def _canonicalize(
        pres: SmoothPresentation, degree: int, coeffs: Mapping[Index, Poly]
    ) -> dict[Index, Poly]:
        raise NotImplementedError

    # --- constructors ---

    @classmethod
    def zero(cls, pres: SmoothPresentation, degree: int) -> Self:
        """The zero element of a given degree."""
        return cls(pres, degree, {}, canonical=True)

    @classmethod
    def scalar(cls, pres: SmoothPresentation, a: Poly | int | Fraction) -> Self:
        """A degree-0 element."""
        value = a if isinstance(a, Poly) else pres.ring.constant(a)
        return cls(pres, 0, {(): value}, canonical=True)

    @classmethod
    def basis(cls, pres: SmoothPresentation, index: Sequence[int], coeff: Poly | None = None) -> Self:
        """``coeff * dx_index`` (or its multivector analogue), canonicalized.

        An unsorted index is sorted with the permutation sign; a repeated
        index gives zero.
        """
        for i in index:
            pres.ring.check_index(i)
        sorted_index = sort_with_sign(tuple(index))
        if sorted_index is None:
            return cls.zero(pres, len(index))
        sign, key = sorted_index
        value = (coeff if coeff is not None else pres.ring.one).scale(sign)
        return cls(pres, len(key), {key: value})

    @classmethod
    def parse(cls, text: str, pres: SmoothPresentation) -> Self:
        """Parse an expression in the canonical text syntax."""
        degree, coeffs = parse_graded(text, pres.ring, "form" if cls.kind == "form" else "mv")
        return cls(pres, degree, coeffs)

    # --- arithmetic ---

    def _check(self, other: _Graded) -> None:
        _check_same(self.pres, other.pres)
        if self.degree != other.degree:
            msg = f"degrees differ: {self.degree} and {other.degree}"
            raise DegreeMismatchError(msg)

    def __add__(self, other: Self) -> Self:
        self._check(other)
        acc = dict(self.coeffs)
        for k, v in other.coeffs.items():
            acc[k] = acc[k] + v if k in acc else v
        return type(self)(self.pres, self.degree, acc, canonical=True)

    def __neg__(self) -> Self:
        return self.scale(-1)

    def __sub__(self, other: Self) -> Self:
        return self + (-other)

    def __mul__(self, a: Poly | int | Fraction) -> Self:
        return self.scale(a)

    __rmul__ = __mul__

    def scale(self, a: Poly | int | Fraction) -> Self:
        """Multiply every coefficient by an element of R."""
        if isinstance(a, Poly):
            coeffs = {k: v * a for k, v in self.coeffs.items()}
        else:
            coeffs = {k: v.scale(a) for k, v in self.coeffs.items()}
        return type(self)(self.pres, self.degree, coeffs, canonical=True)

    # --- queries ---

    def is_zero(self) -> bool:
        """True for the zero element."""
        return not self.coeffs

    def coefficient(self, index: Index) -> Poly:
        """Canonical coefficient on a sorted index tuple."""
        return self.coeffs.get(tuple(index), self.pres.ring.zero)

    def as_scalar(self) -> Poly:
        """The coefficient of a degree-0 element."""
        if self.degree != 0:
            msg = f"expected degree 0, got {self.degree}"
            raise DegreeMismatchError(msg)
        return self.coefficient(())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, type(self)):
            return NotImplemented
        return (
            (self.pres is other.pres or self.pres == other.pres)
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.degree, frozenset(self.coeffs.items())))

    def __str__(self) -> str:
        return render_graded(self.coeffs, self.pres.ring, "form" if self.kind == "form" else "mv")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.degree}, {self})"


class KForm(_Graded):
    """A canonical Kähler q-form ``sum c_J dx_J``."""

    kind = "form"
    __slots__ = ()

    @staticmethod
    def _canonicalize(
        pres: SmoothPresentation, degree: int, coeffs: Mapping[Index, Poly]
    ) -> dict[Index, Poly]:
        return pres.canonical_form_coeffs(degree, coeffs)

    @classmethod
    def volume(cls, pres: SmoothPresentation) -> KForm:
        """vol = sum a_I dx_I."""
        return cls(pres, pres.n, dict(pres.volume_a))


class Multivector(_Graded):
    """A canonical p-multivector ``sum c_J (dx_J)*``."""

    kind = "mv"
    __slots__ = ()

    @staticmethod
    def _canonicalize(
        pres: SmoothPresentation, degree: int, coeffs: Mapping[Index, Poly]
    ) -> dict[Index, Poly]:
        return pres.canonical_mv_coeffs(degree, coeffs)

    @classmethod
    def covolume(cls, pres: SmoothPresentation) -> Multivector:
        """vol* = sum b_I (dx_I)*."""
        return cls(pres, pres.n, dict(pres.volume_b))

    @classmethod
    def from_values(
        cls, pres: SmoothPresentation, degree: int, values: Mapping[Index, Poly]
    ) -> Multivector:
        """Assemble a multivector from its values on sorted generator tuples."""
        return cls(pres, degree, values)

    def value_on(self, index: Index) -> Poly:
        """F(x_K) for a sorted generator tuple K."""
        return self.coefficient(index)

    def __call__(self, *args: Poly) -> Poly:
        return mv_apply(self, list(args))


def canonicalize_form(pres: SmoothPresentation, degree: int, coeffs: Mapping[Index, Poly]) -> KForm:
    """Canonical form from arbitrary free-algebra coefficients."""
    return KForm(pres, degree, coeffs)


def canonicalize_mv(
    pres: SmoothPresentation, degree: int, coeffs: Mapping[Index, Poly]
) -> Multivector:
    """Canonical multivector from arbitrary free-algebra coefficients."""
    return Multivector(pres, degree, coeffs)


def _wedge_coeffs(
    left: Mapping[Index, Poly], right: Mapping[Index, Poly]
) -> dict[Index, Poly]:
    out: dict[Index, Poly] = {}
    for j, cj in left.items():
        for k, ck in right.items():
            merged = sort_with_sign(j + k)
            if merged is None:
                continue
            sign, key = merged
            term = (cj * ck).scale(sign)
            out[key] = out[key] + term if key in out else term
    return out


def mv_wedge(F: Multivector, G: Multivector) -> Multivector:
    """F ^ G, canonicalized."""
    _check_same(F.pres, G.pres)
    return Multivector(F.pres, F.degree + G.degree, _wedge_coeffs(F.coeffs, G.coeffs))


def form_wedge(alpha: KForm, beta: KForm) -> KForm:
    """alpha ^ beta, canonicalized."""
    _check_same(alpha.pres, beta.pres)
    return KForm(alpha.pres, alpha.degree + beta.degree, _wedge_coeffs(alpha.coeffs, beta.coeffs))


def mv_apply(F: Multivector, args: Sequence[Poly]) -> Poly:
    """F(a_1, ..., a_p) = sum_J c_J det[(dx_{J_a})*(a_b)].

    Raises:
        ArityMismatchError: If ``len(args) != F.degree``
    """
    p = F.degree
    if len(args) != p:
        msg = f"a {p}-multivector takes {p} arguments, got {len(args)}"
        raise ArityMismatchError(msg, details={"degree": p, "arguments": len(args)})
    pres = F.pres
    if p == 0:
        return F.coefficient(())
    # dual derivations of each argument, computed once
    needed = sorted({i for j in F.coeffs for i in j})
    partials = {i: [pres.dual_derivation(i, a) for a in args] for i in needed}
    parts = []
    for j, c in F.coeffs.items():
        matrix = [partials[i] for i in j]
        det = determinant(matrix, pres.ring)
        if not det.is_zero():
            parts.append(c * det)
    return total(parts, pres.ring)


def pair(F: Multivector, omega: KForm) -> Poly:
    """F(omega) for equal degrees.

    Raises:
        DegreeMismatchError: If the degrees differ
    """
    _check_same(F.pres, omega.pres)
    if F.degree != omega.degree:
        msg = f"cannot pair a {F.degree}-multivector with a {omega.degree}-form"
        raise DegreeMismatchError(msg)
    return F.pres.pair_coeffs(F.coeffs, omega.coeffs)


def contract_form(F: Multivector, omega: KForm) -> KForm:
    """Contraction iota_F(omega) by the (p, q-p)-shuffle sum.

    Degrees below zero do not exist, so when q < p the result is the zero
    0-form rather than a zero of degree q - p.
    """
    _check_same(F.pres, omega.pres)
    pres = F.pres
    p, q = F.degree, omega.degree
    if q < p:
        return KForm.zero(pres, 0)
    out: dict[Index, Poly] = {}
    for k, ck in omega.coeffs.items():
        for sign, block, rest in shuffles(q, p):
            value = F.value_on(tuple(k[a] for a in block))
            if value.is_zero():
                continue
            key = tuple(k[b] for b in rest)
            term = (value * ck).scale(sign)
            out[key] = out[key] + term if key in out else term
    return KForm(pres, q - p, out)


def contract_mv(omega: KForm, F: Multivector) -> Multivector:
    """Contraction iota_omega(F): its value on x_K is F(dx_K ^ omega).

    As with contract_form, q < p gives the zero of degree 0.
    """
    _check_same(F.pres, omega.pres)
    pres = F.pres
    p, q = omega.degree, F.degree
    if q < p:
        return Multivector.zero(pres, 0)
    values: dict[Index, Poly] = {}
    for k in pres.subsets(q - p):
        parts = []
        for j, cj in omega.coeffs.items():
            merged = sort_with_sign(k + j)
            if merged is None:
                continue
            sign, key = merged
            value = F.value_on(key)
            if not value.is_zero():
                parts.append((cj * value).scale(sign))
        value = total(parts, pres.ring)
        if not value.is_zero():
            values[k] = value
    return Multivector.from_values(pres, q - p, values)


def de_rham(omega: KForm) -> KForm:
    """d(sum c_J dx_J) = sum_J sum_i (dx_i)*(c_J) dx_i ^ dx_J."""
    pres = omega.pres
    out: dict[Index, Poly] = {}
    for j, c in omega.coeffs.items():
        for i in range(pres.r):
            if i in j:
                continue
            partial = pres.dual_derivation(i, c)
            if partial.is_zero():
                continue
            before = sum(1 for x in j if x < i)
            key = tuple(sorted((*j, i)))
            term = partial.scale(-1 if before % 2 else 1)
            out[key] = out[key] + term if key in out else term
    return KForm(pres, omega.degree + 1, out)


def d_twisted(varpi: KForm, omega: KForm) -> KForm:
    """d_t(omega) = d(omega) - varpi ^ omega for a 1-form varpi."""
    if varpi.degree != 1:
        msg = f"the twist must be a 1-form, got degree {varpi.degree}"
        raise DegreeMismatchError(msg)
    return de_rham(omega) - form_wedge(varpi, omega)


def lie_derivative(xi: Multivector, omega: KForm) -> KForm:
    """L_xi(omega) = d(iota_xi omega) + iota_xi(d omega) for a 1-multivector xi."""
    if xi.degree != 1:
        msg = f"the Lie derivative takes a 1-multivector, got degree {xi.degree}"
        raise DegreeMismatchError(msg)
    inner = contract_form(xi, de_rham(omega))
    if omega.degree == 0:
        return inner
    return de_rham(contract_form(xi, omega)) + inner


def schouten(P: Multivector, Q: Multivector) -> Multivector:
    """Schouten-Nijenhuis bracket [P, Q], evaluated on generator tuples.

    On sorted K of size p+q-1 the value is
    (-1)^{(p-1)(q-1)} sum_{(q,p-1)-shuffles} sgn P(Q(x_A), x_B)
    - sum_{(p,q-1)-shuffles} sgn Q(P(x_A), x_B).
    """
    _check_same(P.pres, Q.pres)
    pres = P.pres
    p, q = P.degree, Q.degree
    m = p + q - 1
    if m < 0:
        return Multivector.zero(pres, 0)
    if m > pres.n:
        return Multivector.zero(pres, m)
    gens = pres.ring.gens
    outer = -1 if (p - 1) * (q - 1) % 2 else 1
    values: dict[Index, Poly] = {}
    for k in pres.subsets(m):
        parts: list[Poly] = []
        if p >= 1:
            for sign, block, rest in shuffles(m, q):
                inner = Q.value_on(tuple(k[a] for a in block))
                if inner.is_zero():
                    continue
                args = [inner, *(gens[k[b]] for b in rest)]
                parts.append(mv_apply(P, args).scale(sign * outer))
        if q >= 1:
            for sign, block, rest in shuffles(m, p):
                inner = P.value_on(tuple(k[a] for a in block))
                if inner.is_zero():
                    continue
                args = [inner, *(gens[k[b]] for b in rest)]
                parts.append(mv_apply(Q, args).scale(-sign))
        value = total(parts, pres.ring)
        if not value.is_zero():
            values[k] = value
    return Multivector.from_values(pres, m, values)


# --- independent formulations used as cross-checks ---


def wedge_value(F: Multivector, G: Multivector, args: Sequence[Poly]) -> Poly:
    """(F ^ G)(a_1..a_{p+q}) by the (p, q)-shuffle sum of values."""
    p, q = F.degree, G.degree
    if len(args) != p + q:
        msg = f"expected {p + q} arguments, got {len(args)}"
        raise ArityMismatchError(msg)
    parts = [
        (mv_apply(F, [args[a] for a in block]) * mv_apply(G, [args[b] for b in rest])).scale(sign)
        for sign, block, rest in shuffles(p + q, p)
    ]
    return total(parts, F.pres.ring)


def wedge_all(pres: SmoothPresentation, factors: Sequence[Multivector]) -> Multivector:
    """Ordered wedge product of multivectors; the empty product is 1."""
    result = Multivector.scalar(pres, 1)
    for factor in factors:
        result = mv_wedge(result, factor)
    return result


def commutator(xi: Multivector, eta: Multivector) -> Multivector:
    """[xi, eta] of 1-multivectors from generator values: xi(eta(x_k)) - eta(xi(x_k))."""
    pres = xi.pres
    values = {
        (k,): mv_apply(xi, [eta.value_on((k,))]) - mv_apply(eta, [xi.value_on((k,))])
        for k in range(pres.r)
    }
    return Multivector.from_values(pres, 1, values)


def schouten_decomposable(xis: Sequence[Multivector], etas: Sequence[Multivector]) -> Multivector:
    """[xi_1^..^xi_p, eta_1^..^eta_q] by the decomposable expansion.

    sum_{i,j} (-1)^{i+j} [xi_i, eta_j] ^ xi_1..(no i)..xi_p ^ eta_1..(no j)..eta_q
    """
    pres = (xis or etas)[0].pres
    p, q = len(xis), len(etas)
    if p == 0 or q == 0:
        msg = "the decomposable expansion needs at least one factor on each side"
        raise DegreeOutOfRangeError(msg)
    result = Multivector.zero(pres, p + q - 1)
    for i in range(p):
        for j in range(q):
            rest = [*xis[:i], *xis[i + 1 :], *etas[:j], *etas[j + 1 :]]
            term = wedge_all(pres, [commutator(xis[i], etas[j]), *rest])
            result = result + term.scale(-1 if (i + j) % 2 else 1)
    return result


def contract_form_dual_residue(F: Multivector, omega: KForm) -> Multivector:
    """Residues G(iota_F omega) - (F ^ G)(omega) over basis multivectors G = (dx_K)*.

    The result is zero iff the contraction agrees with its dual formulation. The zero of
    degree 0 is returned when q < p.
    """
    pres = F.pres
    p, q = F.degree, omega.degree
    if q < p:
        return Multivector.zero(pres, 0)
    contracted = contract_form(F, omega)
    residues: dict[Index, Poly] = {}
    for k in pres.subsets(q - p):
        G = Multivector.basis(pres, k)
        residues[k] = pair(G, contracted) - pair(mv_wedge(F, G), omega)
    return Multivector(pres, q - p, residues, canonical=True)


def contract_mv_decomposable(omega: KForm, xis: Sequence[Multivector]) -> Multivector:
    """iota_omega(xi_1 ^ .. ^ xi_q) by the (q-p, p)-shuffle sum.

    sum sgn [(xi_{B}) (omega)] xi_{A} with A the first q-p factors of the shuffle.
    The zero of degree 0 when q < p.
    """
    pres = omega.pres
    p, q = omega.degree, len(xis)
    if q < p:
        return Multivector.zero(pres, 0)
    result = Multivector.zero(pres, q - p)
    for sign, block, rest in shuffles(q, q - p):
        weight = pair(wedge_all(pres, [xis[b] for b in rest]), omega)
        if weight.is_zero():
            continue
        result = result + wedge_all(pres, [xis[a] for a in block]).scale(weight.scale(sign))
    return result
