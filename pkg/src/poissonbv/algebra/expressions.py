"""Expression grammar for polynomials, forms and multivectors.

Polynomials:  integers, rationals ``p/q``, generator names, ``+ - * / ^``
and parentheses; whitespace is insignificant. Division is only by nonzero
constants.

Forms and multivectors add basis chains joined by ``^``::

    x*d x ^ d y - (y + 1) d y ^ d z    # a 2-form
    x*(d x)* - y*(d y)*                # a 1-multivector

A coefficient may precede its basis chain with ``*`` or by juxtaposition.
All terms of one element must share a degree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Literal, TypeAlias

from poissonbv.algebra.ring import Poly, PolynomialRing, RewriteRule
from poissonbv.core.errors import ParseError

if TYPE_CHECKING:
    from collections.abc import Mapping

Kind: TypeAlias = Literal["form", "mv"]
Index: TypeAlias = tuple[int, ...]

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<arrow>->)|(?P<op>[-+*/^(),]))"
)


@dataclass(frozen=True)
class Token:
    """A lexical token with its 1-based column."""

    kind: str
    text: str
    column: int


def tokenize(text: str) -> list[Token]:
    """Split text into tokens.

    Raises:
        ParseError: On an unexpected character
    """
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            column = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            msg = f"unexpected character {text[column - 1]!r}"
            raise ParseError(msg, column=column)
        kind = match.lastgroup or "op"
        value = match.group(kind)
        tokens.append(Token(kind, value, match.start(kind) + 1))
        pos = match.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


def sort_with_sign(indices: tuple[int, ...]) -> tuple[int, Index] | None:
    """Sort indices by transpositions.

    Returns:
        ``(sign, sorted_indices)``, or None when an index repeats
    """
    if len(set(indices)) != len(indices):
        return None
    inversions = sum(
        1 for i in range(len(indices)) for j in range(i + 1, len(indices)) if indices[i] > indices[j]
    )
    return (-1 if inversions % 2 else 1), tuple(sorted(indices))


class _Parser:
    def __init__(self, text: str, ring: PolynomialRing) -> None:
        self.ring = ring
        self.tokens = tokenize(text)
        self.pos = 0

    # --- token helpers ---

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.tok
        self.pos += 1
        return token

    def error(self, msg: str, token: Token | None = None) -> ParseError:
        return ParseError(msg, column=(token or self.tok).column)

    def expect(self, text: str) -> Token:
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def finish(self) -> None:
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")

    # --- polynomials ---

    def expr(self) -> Poly:
        sign = 1
        if self.tok.text in ("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
        value = self.term().scale(sign)
        while self.tok.text in ("+", "-"):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Poly:
        value = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.advance()
            rhs = self.unary()
            value = value * rhs if op.text == "*" else self.divide(value, rhs, op)
        return value

    def divide(self, value: Poly, divisor: Poly, op: Token) -> Poly:
        c = divisor.constant_value()
        if c is None or c == 0:
            raise self.error("division is only by nonzero constants", op)
        return value.scale(Fraction(1) / c)

    def unary(self) -> Poly:
        if self.tok.text == "-":
            self.advance()
            return -self.unary()
        if self.tok.text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.tok.text == "^":
            self.advance()
            if self.tok.kind != "number":
                raise self.error("expected a non-negative integer exponent")
            base = base ** int(self.advance().text)
        return base

    def atom(self) -> Poly:
        token = self.tok
        if token.kind == "number":
            self.advance()
            return self.ring.constant(int(token.text))
        if token.kind == "name":
            if token.text not in self.ring.generators:
                raise self.error(f"undeclared generator {token.text!r}")
            self.advance()
            return self.ring.gen(self.ring.generators.index(token.text))
        if token.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        found = token.text or "end of input"
        raise self.error(f"unexpected {found!r}")

    # --- graded elements ---

    def at_basis(self, kind: Kind) -> bool:
        if kind == "form":
            return self.tok.text == "d" and self.peek().kind == "name"
        return (
            self.tok.text == "("
            and self.peek().text == "d"
            and self.peek(2).kind == "name"
            and self.peek(3).text == ")"
        )

    def basis_atom(self, kind: Kind) -> int:
        if kind == "mv":
            self.expect("(")
        self.expect("d")
        token = self.advance()
        if token.text not in self.ring.generators:
            raise self.error(f"undeclared generator {token.text!r}", token)
        if kind == "mv":
            self.expect(")")
            self.expect("*")
        return self.ring.generators.index(token.text)

    def basis_chain(self, kind: Kind) -> list[int]:
        chain = [self.basis_atom(kind)]
        while self.tok.text == "^":
            self.advance()
            if not self.at_basis(kind):
                raise self.error("expected a basis element after '^'")
            chain.append(self.basis_atom(kind))
        return chain

    def graded_term(self, kind: Kind) -> tuple[Poly, list[int] | None]:
        coeff = self.ring.one
        chain: list[int] | None = None
        first = True
        while True:
            if self.at_basis(kind):
                if chain is not None:
                    raise self.error("a term carries one basis chain")
                chain = self.basis_chain(kind)
            elif first or self.tok.text in ("*", "/"):
                if not first:
                    op = self.advance()
                    if self.at_basis(kind) and op.text == "*":
                        continue
                    factor = self.unary_graded(kind)
                    coeff = coeff * factor if op.text == "*" else self.divide(coeff, factor, op)
                else:
                    coeff = self.unary_graded(kind)
            else:
                break
            first = False
        return coeff, chain

    def unary_graded(self, kind: Kind) -> Poly:
        if self.at_basis(kind):
            raise self.error("misplaced basis element")
        return self.unary()

    def element(self, kind: Kind) -> tuple[int, dict[Index, Poly]]:
        terms: list[tuple[int, Poly, list[int] | None, Token]] = []
        sign = 1
        if self.tok.text in ("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
        while True:
            start = self.tok
            coeff, chain = self.graded_term(kind)
            terms.append((sign, coeff, chain, start))
            if self.tok.text not in ("+", "-"):
                break
            sign = -1 if self.advance().text == "-" else 1
        self.finish()
        degree = len(terms[0][2] or [])
        coeffs: dict[Index, Poly] = {}
        for sign, coeff, chain, start in terms:
            indices = tuple(chain or [])
            if len(indices) != degree:
                raise self.error("terms have different degrees", start)
            sorted_chain = sort_with_sign(indices)
            if sorted_chain is None:
                continue
            perm_sign, key = sorted_chain
            value = coeff.scale(sign * perm_sign)
            coeffs[key] = coeffs.get(key, self.ring.zero) + value
        return degree, {k: v for k, v in coeffs.items() if not v.is_zero()}


def parse_poly(text: str, ring: PolynomialRing) -> Poly:
    """Parse a polynomial expression.

    Raises:
        ParseError: With the 1-based column of the offending token
    """
    parser = _Parser(text, ring)
    if parser.tok.kind == "end":
        raise parser.error("empty expression")
    value = parser.expr()
    parser.finish()
    return value


def parse_graded(text: str, ring: PolynomialRing, kind: Kind) -> tuple[int, dict[Index, Poly]]:
    """Parse a form (``kind="form"``) or multivector (``kind="mv"``) expression.

    Returns:
        ``(degree, coefficients)`` keyed by sorted 0-based index tuples, not yet canonical
    """
    parser = _Parser(text, ring)
    if parser.tok.kind == "end":
        raise parser.error("empty expression")
    return parser.element(kind)


def parse_rule(text: str, generators: tuple[str, ...]) -> RewriteRule:
    """Parse a rewrite rule ``lead -> tail`` over the free ring on ``generators``.

    Raises:
        ParseError: If the arrow is missing or the lead is not a monic monomial
    """
    head, arrow, tail = text.partition("->")
    if not arrow:
        msg = "a relation needs a designated leading monomial: 'lead -> tail'"
        raise ParseError(msg, column=1)
    free = PolynomialRing(generators)
    lead = parse_poly(head, free)
    if len(lead.terms) != 1 or next(iter(lead.terms.values())) != 1:
        msg = "the leading side must be a monic monomial"
        raise ParseError(msg, column=1)
    try:
        tail_poly = parse_poly(tail, free)
    except ParseError as exc:
        raise exc.at(1, len(head) + len(arrow)) from None
    return RewriteRule.from_terms(next(iter(lead.terms)), tail_poly.terms)


def _basis_text(ring: PolynomialRing, index: Index, kind: Kind) -> str:
    names = [ring.generators[i] for i in index]
    if kind == "mv":
        return " ^ ".join(f"(d {name})*" for name in names)
    return " ^ ".join(f"d {name}" for name in names)


def render_graded(coeffs: Mapping[Index, Poly], ring: PolynomialRing, kind: Kind) -> str:
    """Canonical text for a form or multivector.

    Terms are ordered by index tuple; coefficients that are single terms are
    written as a product prefix, longer ones in parentheses.
    """
    items = sorted((k, v) for k, v in coeffs.items() if not v.is_zero())
    if not items:
        return "0"
    out = ""
    for position, (index, coeff) in enumerate(items):
        if not index:
            body, negative = str(coeff), False
            if position:
                negative = body.startswith("-")
                body = body[1:] if negative else body
        else:
            basis = _basis_text(ring, index, kind)
            negative = False
            if coeff.is_monomial_term():
                (mono, c), = coeff.terms.items()
                negative = c < 0
                prefix = str(ring.poly({mono: abs(c)}))
                body = basis if prefix == "1" else f"{prefix}*{basis}"
            else:
                body = f"({coeff})*{basis}"
        if position == 0:
            out = f"-{body}" if negative else body
        else:
            out += f" - {body}" if negative else f" + {body}"
    return out
