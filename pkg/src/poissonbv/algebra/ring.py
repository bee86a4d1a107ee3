"""Exact sparse multivariate polynomials over the rationals.

A PolynomialRing holds generator names and rewrite rules ``lead -> tail``.
Every Poly is stored in normal form: no zero coefficients and no monomial
divisible by a rule's leading monomial. Coefficients are ``Fraction``.

Example:
    ring = PolynomialRing(["x", "y", "z"], [sphere_rule])
    z = ring.gen(2)
    print(z**3)  # -x^2*z - y^2*z + z
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import TypeAlias

from poissonbv.config import get_settings
from poissonbv.core.errors import (
    IndexOutOfRangeError,
    NonConfluentRulesError,
    ParseError,
    PresentationMismatchError,
)

Monomial: TypeAlias = tuple[int, ...]
Scalar: TypeAlias = int | Fraction
Terms: TypeAlias = Mapping[Monomial, Scalar]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = frozenset({"d"})


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    """Multiply two monomials."""
    return tuple(i + j for i, j in zip(a, b, strict=True))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    return all(i <= j for i, j in zip(a, b, strict=True))


def grlex_key(m: Monomial) -> tuple[int, Monomial]:
    """Sort key for the graded lexicographic order (x1 > x2 > ...)."""
    return (sum(m), m)


def format_scalar(c: Fraction) -> str:
    """Render a rational as ``p`` or ``p/q``."""
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class RewriteRule:
    """A rewrite rule ``lead -> tail`` realizing the relation ``lead - tail``.

    Attributes:
        lead: The designated (monic) leading monomial
        tail: Terms the leading monomial rewrites to, in graded-lex order
    """

    lead: Monomial
    tail: tuple[tuple[Monomial, Fraction], ...]

    @classmethod
    def from_terms(cls, lead: Monomial, tail: Terms) -> RewriteRule:
        """Build a rule, dropping zero tail coefficients."""
        items = sorted(
            ((m, Fraction(c)) for m, c in tail.items() if c != 0),
            key=lambda item: grlex_key(item[0]),
            reverse=True,
        )
        return cls(lead=tuple(lead), tail=tuple(items))

    @classmethod
    def parse(cls, text: str, generators: tuple[str, ...]) -> RewriteRule:
        """Parse ``lead -> tail``, e.g. ``z^2 -> 1 - x^2 - y^2``."""
        from poissonbv.algebra.expressions import parse_rule

        return parse_rule(text, generators)

    def relation_terms(self) -> dict[Monomial, Fraction]:
        """Terms of the relation polynomial ``lead - tail`` as a raw representative."""
        terms: dict[Monomial, Fraction] = {self.lead: Fraction(1)}
        for m, c in self.tail:
            terms[m] = terms.get(m, Fraction(0)) - c
        return {m: c for m, c in terms.items() if c != 0}

    def decreasing_variable(self) -> int | None:
        """Index of a variable whose degree strictly drops in every tail monomial."""
        for v, e in enumerate(self.lead):
            if e > 0 and all(m[v] < e for m, _ in self.tail):
                return v
        return None


class PolynomialRing:
    """Quotient of Q[x1..xr] by a confluent, terminating rewrite system.

    Rings compare equal when generators and rules agree. Normal forms of
    monomials are memoized per ring.
    """

    def __init__(
        self,
        generators: Sequence[str],
        rules: Sequence[RewriteRule] = (),
        *,
        assert_confluent: bool = False,
        depth_limit: int | None = None,
    ) -> None:
        """Initialize the ring.

        Args:
            generators: Generator names, in order x1 > x2 > ...
            rules: Rewrite rules, one per relation
            assert_confluent: Accept overlapping leading monomials
            depth_limit: Maximum rewriting depth (defaults to settings)

        Raises:
            ParseError: If a generator name is invalid or repeated
            NonConfluentRulesError: If the rules may not give unique normal forms
        """
        names = tuple(generators)
        for name in names:
            if not _NAME.match(name) or name in _RESERVED:
                msg = f"invalid generator name {name!r}"
                raise ParseError(msg)
        if len(set(names)) != len(names):
            msg = "generator names must be distinct"
            raise ParseError(msg)
        self.generators = names
        self.rules = tuple(rules)
        self.assert_confluent = assert_confluent
        self.depth_limit = depth_limit or get_settings().rewrite_depth_limit
        self._nf_cache: dict[Monomial, dict[Monomial, Fraction]] = {}
        self._check_rules()

    def _check_rules(self) -> None:
        r = len(self.generators)
        for rule in self.rules:
            if len(rule.lead) != r or any(len(m) != r for m, _ in rule.tail):
                msg = "rule monomial length differs from the generator count"
                raise NonConfluentRulesError(msg, details={"generators": r})
            if not any(rule.lead):
                msg = "a rule cannot rewrite the constant monomial"
                raise NonConfluentRulesError(msg)
            if rule.decreasing_variable() is None:
                msg = f"rule {self.format_rule(rule)} does not terminate"
                raise NonConfluentRulesError(msg, details={"rule": self.format_rule(rule)})
        if self.assert_confluent:
            return
        for i, first in enumerate(self.rules):
            for second in self.rules[i + 1 :]:
                if any(a and b for a, b in zip(first.lead, second.lead, strict=True)):
                    msg = (
                        f"leading monomials of {self.format_rule(first)} and "
                        f"{self.format_rule(second)} overlap"
                    )
                    raise NonConfluentRulesError(msg)

    # --- identity ---

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolynomialRing):
            return NotImplemented
        return self is other or (
            self.generators == other.generators and self.rules == other.rules
        )

    def __hash__(self) -> int:
        return hash((self.generators, self.rules))

    def __repr__(self) -> str:
        rules = ", ".join(self.format_rule(rule) for rule in self.rules)
        return f"PolynomialRing({', '.join(self.generators)}{'; ' + rules if rules else ''})"

    @property
    def r(self) -> int:
        """Number of generators."""
        return len(self.generators)

    @property
    def is_free(self) -> bool:
        """True when there are no relations."""
        return not self.rules

    def index(self, name: str) -> int:
        """0-based index of a generator name.

        Raises:
            IndexOutOfRangeError: If the name is not a generator
        """
        try:
            return self.generators.index(name)
        except ValueError:
            msg = f"unknown generator {name!r}"
            raise IndexOutOfRangeError(msg, details={"generators": list(self.generators)}) from None

    def check_index(self, i: int) -> None:
        """Raise IndexOutOfRangeError unless ``0 <= i < r``."""
        if not 0 <= i < self.r:
            msg = f"generator index {i} outside 0..{self.r - 1}"
            raise IndexOutOfRangeError(msg, details={"index": i, "r": self.r})

    # --- constructors ---

    def poly(self, terms: Terms) -> Poly:
        """Normalize a representative into a Poly."""
        return Poly(self, self.reduce(terms), reduced=True)

    def constant(self, c: Scalar) -> Poly:
        """The constant polynomial ``c``."""
        return Poly(self, {(0,) * self.r: Fraction(c)} if c else {}, reduced=True)

    @property
    def zero(self) -> Poly:
        """The zero polynomial."""
        return Poly(self, {}, reduced=True)

    @property
    def one(self) -> Poly:
        """The unit polynomial."""
        return self.constant(1)

    def gen(self, i: int) -> Poly:
        """The i-th generator (0-based) as a polynomial."""
        self.check_index(i)
        exps = tuple(1 if k == i else 0 for k in range(self.r))
        return self.poly({exps: 1})

    @property
    def gens(self) -> tuple[Poly, ...]:
        """All generators as polynomials."""
        return tuple(self.gen(i) for i in range(self.r))

    def monomial(self, exps: Monomial, coeff: Scalar = 1) -> Poly:
        """``coeff * x^exps`` in normal form."""
        return self.poly({tuple(exps): coeff})

    # --- rewriting ---

    def _rule_for(self, m: Monomial) -> RewriteRule | None:
        for rule in self.rules:
            if monomial_divides(rule.lead, m):
                return rule
        return None

    def _reduce_monomial(self, m: Monomial, depth: int = 0) -> dict[Monomial, Fraction]:
        cached = self._nf_cache.get(m)
        if cached is not None:
            return cached
        rule = self._rule_for(m)
        if rule is None:
            result = {m: Fraction(1)}
        else:
            if depth > self.depth_limit:
                msg = "rewriting exceeded the depth limit; the rules cycle"
                raise NonConfluentRulesError(msg, details={"depth_limit": self.depth_limit})
            quotient = tuple(a - b for a, b in zip(m, rule.lead, strict=True))
            acc: dict[Monomial, Fraction] = {}
            for tm, tc in rule.tail:
                for nm, nc in self._reduce_monomial(monomial_mul(quotient, tm), depth + 1).items():
                    acc[nm] = acc.get(nm, Fraction(0)) + tc * nc
            result = {k: v for k, v in acc.items() if v != 0}
        self._nf_cache[m] = result
        return result

    def reduce(self, terms: Terms) -> dict[Monomial, Fraction]:
        """Normal form of a representative, as a terms mapping."""
        out: dict[Monomial, Fraction] = {}
        if not self.rules:
            for m, c in terms.items():
                if c:
                    out[m] = out.get(m, Fraction(0)) + c
        else:
            for m, c in terms.items():
                if not c:
                    continue
                for nm, nc in self._reduce_monomial(m).items():
                    out[nm] = out.get(nm, Fraction(0)) + c * nc
        return {m: Fraction(c) for m, c in out.items() if c != 0}

    def is_normal(self, m: Monomial) -> bool:
        """True if no rule's leading monomial divides ``m``."""
        return self._rule_for(m) is None

    def monomials_of_degree(self, d: int) -> list[Monomial]:
        """Normal-form monomials of total degree ``d``, in descending graded-lex order."""
        if d < 0:
            return []
        out: list[Monomial] = []
        for combo in combinations_with_replacement(range(self.r), d):
            exps = [0] * self.r
            for v in combo:
                exps[v] += 1
            m = tuple(exps)
            if self.is_normal(m):
                out.append(m)
        out.sort(reverse=True)
        return out

    def relations(self) -> list[dict[Monomial, Fraction]]:
        """Raw representatives ``lead - tail`` of the relations."""
        return [rule.relation_terms() for rule in self.rules]

    # --- printing ---

    def format_monomial(self, m: Monomial) -> str:
        """Render a monomial as ``x^2*y``; the empty product is ``1``."""
        parts = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(self.generators, m, strict=True)
            if e
        ]
        return "*".join(parts) if parts else "1"

    def format_terms(self, terms: Terms) -> str:
        """Render terms in descending graded-lex order."""
        items = sorted(terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)
        if not items:
            return "0"
        out = ""
        for k, (m, c) in enumerate(items):
            coeff = Fraction(c)
            sign = "-" if coeff < 0 else "+"
            body = _format_term(self.format_monomial(m), abs(coeff), constant=not any(m))
            if k == 0:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
        return out

    def format_rule(self, rule: RewriteRule) -> str:
        """Render a rule as ``lead -> tail``."""
        return f"{self.format_monomial(rule.lead)} -> {self.format_terms(dict(rule.tail))}"


def _format_term(mono: str, coeff: Fraction, *, constant: bool) -> str:
    if constant:
        return format_scalar(coeff)
    if coeff == 1:
        return mono
    return f"{format_scalar(coeff)}*{mono}"


class Poly:
    """Polynomial in normal form over a PolynomialRing.

    Values are immutable; arithmetic returns new normalized values.
    Plain ints and Fractions coerce to constants.
    """

    __slots__ = ("_hash", "ring", "terms")

    def __init__(self, ring: PolynomialRing, terms: Terms, *, reduced: bool = False) -> None:
        """Initialize from terms, normalizing unless ``reduced`` is set."""
        self.ring = ring
        self.terms: dict[Monomial, Fraction] = (
            {m: Fraction(c) for m, c in terms.items()} if reduced else ring.reduce(terms)
        )
        self._hash: int | None = None

    # --- coercion ---

    def _coerce(self, other: object) -> Poly | None:
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                msg = "polynomials belong to different rings"
                raise PresentationMismatchError(msg)
            return other
        if isinstance(other, int | Fraction):
            return self.ring.constant(other)
        return None

    # --- arithmetic ---

    def __add__(self, other: object) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        acc = dict(self.terms)
        for m, c in rhs.terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return Poly(self.ring, {m: c for m, c in acc.items() if c}, reduced=True)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.ring, {m: -c for m, c in self.terms.items()}, reduced=True)

    def __sub__(self, other: object) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> Poly:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> Poly:
        if isinstance(other, int | Fraction):
            return self.scale(other)
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if not self.terms or not rhs.terms:
            return self.ring.zero
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in rhs.terms.items():
                m = monomial_mul(m1, m2)
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return self.ring.poly(acc)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> Poly:
        if isinstance(other, int | Fraction) and other != 0:
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> Poly:
        if exponent < 0:
            msg = "negative powers are not polynomials"
            raise ValueError(msg)
        result = self.ring.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, c: Scalar) -> Poly:
        """Multiply by a rational constant."""
        if not c:
            return self.ring.zero
        k = Fraction(c)
        return Poly(self.ring, {m: k * v for m, v in self.terms.items()}, reduced=True)

    # --- queries ---

    def is_zero(self) -> bool:
        """True for the zero polynomial."""
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int | Fraction):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.generators, frozenset(self.terms.items())))
        return self._hash

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order."""
        yield from sorted(self.terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def coefficient(self, m: Monomial) -> Fraction:
        """Coefficient of a normal-form monomial."""
        return self.terms.get(tuple(m), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        """True if all terms share one total degree (zero counts as homogeneous)."""
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        """True for constants, including zero."""
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction | None:
        """The value of a constant polynomial, or None."""
        if not self.is_constant():
            return None
        return self.terms.get((0,) * self.ring.r, Fraction(0))

    def is_monomial_term(self) -> bool:
        """True for a single nonzero term ``c*x^a``."""
        return len(self.terms) == 1

    def __str__(self) -> str:
        return self.ring.format_terms(self.terms)

    def __repr__(self) -> str:
        return f"Poly({self})"


def normal_form(representative: Terms | Poly, ring: PolynomialRing) -> Poly:
    """Normal form of a representative modulo the ring's rewrite rules.

    Args:
        representative: Raw terms or an existing Poly
        ring: Target ring

    Returns:
        The unique normal form
    """
    terms = representative.terms if isinstance(representative, Poly) else representative
    return ring.poly(terms)


def partial_terms(terms: Terms, i: int) -> dict[Monomial, Fraction]:
    """Formal partial derivative of raw terms with respect to x_i (0-based)."""
    out: dict[Monomial, Fraction] = {}
    for m, c in terms.items():
        e = m[i]
        if e == 0 or not c:
            continue
        dm = (*m[:i], e - 1, *m[i + 1 :])
        out[dm] = out.get(dm, Fraction(0)) + Fraction(c) * e
    return out


def partial_derivative(p: Poly, i: int) -> Poly:
    """Formal partial derivative of the normal-form representative.

    Args:
        p: The polynomial
        i: 0-based generator index

    Raises:
        IndexOutOfRangeError: If ``i`` is not a generator index
    """
    p.ring.check_index(i)
    return p.ring.poly(partial_terms(p.terms, i))


def poly_equal(p: Poly, q: Poly) -> bool:
    """Decide equality in R of two normal forms.

    Raises:
        PresentationMismatchError: If the rings differ
    """
    if p.ring is not q.ring and p.ring != q.ring:
        msg = "polynomials belong to different rings"
        raise PresentationMismatchError(msg)
    return p.terms == q.terms


def total(polys: Iterable[Poly], ring: PolynomialRing) -> Poly:
    """Sum of polynomials, with a one-pass accumulator."""
    acc: dict[Monomial, Fraction] = {}
    for p in polys:
        for m, c in p.terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
    return Poly(ring, {m: c for m, c in acc.items() if c}, reduced=True)
