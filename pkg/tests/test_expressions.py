"""Tests for the expression grammar and canonical rendering."""

from fractions import Fraction

import pytest

from poissonbv.algebra.exterior import KForm, Multivector
from poissonbv.algebra.expressions import parse_poly, parse_rule, sort_with_sign, tokenize
from poissonbv.algebra.presentation import SmoothPresentation
from poissonbv.core.errors import ParseError


class TestTokenize:
    """Tests for the tokenizer."""

    def test_columns(self) -> None:
        """Tokens carry 1-based columns; the end token sits past the text."""
        tokens = tokenize("x + 12*y")
        assert [(t.kind, t.text, t.column) for t in tokens] == [
            ("name", "x", 1),
            ("op", "+", 3),
            ("number", "12", 5),
            ("op", "*", 7),
            ("name", "y", 8),
            ("end", "", 9),
        ]

    def test_unexpected_character(self) -> None:
        """Stray characters report their column."""
        with pytest.raises(ParseError) as info:
            tokenize("x $")
        assert info.value.column == 3


class TestSortWithSign:
    """Tests for index sorting."""

    def test_permutation_sign(self) -> None:
        """Transposition parity gives the sign."""
        assert sort_with_sign((1, 0)) == (-1, (0, 1))
        assert sort_with_sign((2, 0, 1)) == (1, (0, 1, 2))

    def test_repeated_index(self) -> None:
        """A repeated index makes the wedge vanish."""
        assert sort_with_sign((0, 1, 0)) is None


class TestParsePoly:
    """Tests for polynomial parsing."""

    def test_arithmetic(self, plane: SmoothPresentation) -> None:
        """Precedence, powers and constant division."""
        ring = plane.ring
        x, y = ring.gens
        assert parse_poly("2*x^2 - x*y/3", ring) == (x**2).scale(2) - (x * y).scale(Fraction(1, 3))
        assert parse_poly("-(x + y)^2", ring) == -((x + y) ** 2)
        assert parse_poly("3/6", ring) == ring.constant(Fraction(1, 2))

    def test_undeclared_generator(self, plane: SmoothPresentation) -> None:
        """Unknown names point at their column."""
        with pytest.raises(ParseError, match="undeclared generator 'q'") as info:
            parse_poly("x + q", plane.ring)
        assert info.value.column == 5

    def test_division_by_polynomial(self, plane: SmoothPresentation) -> None:
        """Division is only by nonzero constants."""
        with pytest.raises(ParseError, match="nonzero constants") as info:
            parse_poly("x / y", plane.ring)
        assert info.value.column == 3
        with pytest.raises(ParseError):
            parse_poly("x / 0", plane.ring)

    def test_empty_and_trailing(self, plane: SmoothPresentation) -> None:
        """Empty input and trailing tokens are rejected."""
        with pytest.raises(ParseError, match="empty"):
            parse_poly("   ", plane.ring)
        with pytest.raises(ParseError):
            parse_poly("x y", plane.ring)


class TestParseGraded:
    """Tests for form and multivector parsing."""

    def test_form_terms_combine(self, plane: SmoothPresentation) -> None:
        """Reordered basis chains pick up their sign."""
        omega = KForm.parse("x*d x ^ d y - d y ^ d x", plane)
        x = plane.ring.gen(0)
        assert omega.degree == 2
        assert omega.coefficient((0, 1)) == x + 1

    def test_juxtaposed_coefficient(self, plane: SmoothPresentation) -> None:
        """A coefficient may precede its chain without '*'."""
        assert KForm.parse("(x + y) d x", plane) == KForm.parse("(x + y)*d x", plane)

    def test_multivector(self, plane: SmoothPresentation) -> None:
        """(d y)* ^ (d x)* is minus the sorted chain."""
        F = Multivector.parse("(d y)* ^ (d x)*", plane)
        assert F == Multivector.basis(plane, (0, 1)).scale(-1)

    def test_mixed_degrees(self, plane: SmoothPresentation) -> None:
        """All terms of an element share one degree."""
        with pytest.raises(ParseError, match="different degrees"):
            KForm.parse("d x + 1", plane)

    def test_two_form_with_polynomial_coefficient(self, space: SmoothPresentation) -> None:
        """Both terms of x*d x ^ d y - (y + 1) d y ^ d z are 2-form terms."""
        omega = KForm.parse("x*d x ^ d y - (y + 1) d y ^ d z", space)
        x, y, _ = space.ring.gens
        assert omega.degree == 2
        assert omega.coefficient((0, 1)) == x
        assert omega.coefficient((1, 2)) == -(y + 1)
        with pytest.raises(ParseError, match="different degrees"):
            KForm.parse("x*d x ^ d y - (y + 1) d z", space)

    def test_scalar(self, plane: SmoothPresentation) -> None:
        """A bare polynomial is a degree-0 element."""
        assert KForm.parse("x*y", plane).degree == 0


class TestParseRule:
    """Tests for rewrite-rule parsing."""

    def test_missing_arrow(self) -> None:
        """A relation needs its designated leading monomial."""
        with pytest.raises(ParseError, match="leading monomial"):
            parse_rule("z^2 + x^2", ("x", "z"))

    def test_non_monic_lead(self) -> None:
        """The leading side must be a monic monomial."""
        with pytest.raises(ParseError, match="monic"):
            parse_rule("2*z -> x", ("x", "z"))

    def test_tail_error_column(self) -> None:
        """Errors in the tail are located within the whole rule."""
        with pytest.raises(ParseError) as info:
            parse_rule("z -> x + w", ("x", "z"))
        assert info.value.column == 10


class TestRender:
    """Tests for canonical text."""

    def test_multivector_text(self, plane: SmoothPresentation) -> None:
        """Monomial coefficients prefix the chain; signs join terms."""
        x, y = plane.ring.gens
        F = Multivector(plane, 1, {(0,): x, (1,): -y})
        assert str(F) == "x*(d x)* - y*(d y)*"

    def test_form_text(self, plane: SmoothPresentation) -> None:
        """Longer coefficients are parenthesized."""
        omega = KForm.parse("(x + y)*d x ^ d y", plane)
        assert str(omega) == "(x + y)*d x ^ d y"

    def test_zero(self, plane: SmoothPresentation) -> None:
        """The zero element of any degree renders as 0."""
        assert str(KForm.zero(plane, 2)) == "0"

    @pytest.mark.parametrize(
        "text",
        ["-3*d x + 1/2*x^2*d y", "d x ^ d y", "(x*y - 1)*d x - y^2*d y", "x^2 - 2*y"],
    )
    def test_form_round_trip(self, plane: SmoothPresentation, text: str) -> None:
        """Rendering a parsed form parses back to the same form."""
        omega = KForm.parse(text, plane)
        assert KForm.parse(str(omega), plane) == omega
