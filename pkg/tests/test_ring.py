"""Tests for polynomial rings and normal forms."""

from fractions import Fraction

import pytest

from poissonbv.algebra.expressions import parse_poly, parse_rule
from poissonbv.algebra.ring import (
    PolynomialRing,
    RewriteRule,
    normal_form,
    partial_derivative,
    poly_equal,
)
from poissonbv.core.errors import NonConfluentRulesError, ParseError, PresentationMismatchError


@pytest.fixture
def free() -> PolynomialRing:
    """Q[x, y]."""
    return PolynomialRing(["x", "y"])


@pytest.fixture
def sphere_ring() -> PolynomialRing:
    """Q[x, y, z] / (x^2 + y^2 + z^2 - 1)."""
    return PolynomialRing(["x", "y", "z"], [parse_rule("z^2 -> 1 - x^2 - y^2", ("x", "y", "z"))])


class TestPolynomialRing:
    """Tests for ring construction."""

    def test_generators(self, free: PolynomialRing) -> None:
        """Generators are 0-based and render by name."""
        assert free.r == 2
        assert free.is_free
        assert str(free.gen(0)) == "x"
        assert free.index("y") == 1

    def test_reserved_name_rejected(self) -> None:
        """'d' is reserved for differentials."""
        with pytest.raises(ParseError):
            PolynomialRing(["x", "d"])

    def test_duplicate_names_rejected(self) -> None:
        """Generator names are distinct."""
        with pytest.raises(ParseError, match="distinct"):
            PolynomialRing(["x", "x"])

    def test_non_terminating_rule_rejected(self) -> None:
        """A rule that grows its own variable does not terminate."""
        with pytest.raises(NonConfluentRulesError, match="terminate"):
            PolynomialRing(["x", "y"], [parse_rule("x -> x^2", ("x", "y"))])

    def test_overlapping_rules(self) -> None:
        """Overlapping leads need an explicit confluence assertion."""
        rules = [parse_rule("x*y -> 1", ("x", "y")), parse_rule("x^2 -> y", ("x", "y"))]
        with pytest.raises(NonConfluentRulesError, match="overlap"):
            PolynomialRing(["x", "y"], rules)
        ring = PolynomialRing(["x", "y"], rules, assert_confluent=True)
        assert ring.assert_confluent

    def test_monomials_of_degree(self, free: PolynomialRing, sphere_ring: PolynomialRing) -> None:
        """Normal monomials come in descending graded-lex order."""
        assert free.monomials_of_degree(2) == [(2, 0), (1, 1), (0, 2)]
        assert free.monomials_of_degree(-1) == []
        assert len(sphere_ring.monomials_of_degree(2)) == 5
        assert (0, 0, 2) not in sphere_ring.monomials_of_degree(2)

    def test_rule_rendering(self, sphere_ring: PolynomialRing) -> None:
        """Rules render as 'lead -> tail'."""
        assert sphere_ring.format_rule(sphere_ring.rules[0]) == "z^2 -> -x^2 - y^2 + 1"


class TestPoly:
    """Tests for polynomial arithmetic."""

    def test_square_of_sum(self, free: PolynomialRing) -> None:
        """(x + y)^2 expands in graded-lex order."""
        x, y = free.gens
        assert str((x + y) ** 2) == "x^2 + 2*x*y + y^2"

    def test_constants_coerce(self, free: PolynomialRing) -> None:
        """Ints and Fractions act as constants."""
        x, _ = free.gens
        assert str(x * Fraction(1, 2) + 3) == "1/2*x + 3"
        assert 2 - x == free.constant(2) - x
        assert x / 2 == x.scale(Fraction(1, 2))

    def test_degree_and_homogeneity(self, free: PolynomialRing) -> None:
        """The zero polynomial has degree -1 and counts as homogeneous."""
        x, y = free.gens
        assert free.zero.degree() == -1
        assert free.zero.is_homogeneous()
        assert (x * y + y**2).is_homogeneous()
        assert not (x + y**2).is_homogeneous()
        assert (x**3).degree() == 3

    def test_negative_power(self, free: PolynomialRing) -> None:
        """Negative powers are not polynomials."""
        with pytest.raises(ValueError, match="negative"):
            _ = free.gen(0) ** -1

    def test_different_rings(self, free: PolynomialRing, sphere_ring: PolynomialRing) -> None:
        """Mixing rings raises PresentationMismatchError."""
        with pytest.raises(PresentationMismatchError):
            _ = free.gen(0) + sphere_ring.gen(0)
        with pytest.raises(PresentationMismatchError):
            poly_equal(free.gen(0), sphere_ring.gen(0))

    def test_partial_derivative(self, free: PolynomialRing) -> None:
        """Formal partial derivatives."""
        x, y = free.gens
        assert partial_derivative(x**2 * y, 0) == (x * y).scale(2)
        assert partial_derivative(x**2, 1).is_zero()


class TestNormalForm:
    """Tests for rewriting modulo relations."""

    def test_sphere_cube(self, sphere_ring: PolynomialRing) -> None:
        """z^3 reduces through z^2 -> 1 - x^2 - y^2."""
        z = sphere_ring.gen(2)
        assert str(z**3) == "-x^2*z - y^2*z + z"

    def test_relation_vanishes(self, sphere_ring: PolynomialRing) -> None:
        """x^2 + y^2 + z^2 - 1 is zero in the quotient."""
        value = parse_poly("x^2 + y^2 + z^2 - 1", sphere_ring)
        assert value.is_zero()

    def test_normal_form_of_representative(self, sphere_ring: PolynomialRing) -> None:
        """normal_form reduces raw terms."""
        value = normal_form({(0, 0, 2): 1, (2, 0, 0): 1}, sphere_ring)
        assert str(value) == "-y^2 + 1"

    def test_normal_forms_are_normal(self, sphere_ring: PolynomialRing) -> None:
        """No monomial of a product is reducible."""
        x, y, z = sphere_ring.gens
        product = (x + z) ** 3 * (y - z) ** 2
        assert all(sphere_ring.is_normal(m) for m in product.terms)

    def test_rule_from_terms(self) -> None:
        """Zero tail terms are dropped and the tail is sorted."""
        rule = RewriteRule.from_terms((2,), {(0,): 1, (1,): 0})
        assert rule.tail == (((0,), Fraction(1)),)
        assert rule.decreasing_variable() == 0

    def test_rule_parse(self) -> None:
        """RewriteRule.parse reads 'lead -> tail'."""
        rule = RewriteRule.parse("z^2 -> 1 - x^2 - y^2", ("x", "y", "z"))
        assert rule.lead == (0, 0, 2)
        assert rule == parse_rule("z^2 -> 1 - x^2 - y^2", ("x", "y", "z"))
