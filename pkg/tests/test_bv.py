"""Tests for the BV operator."""

import pytest

from poissonbv.algebra.exterior import KForm, Multivector, schouten
from poissonbv.algebra.presentation import SmoothPresentation
from poissonbv.calculus.bv import (
    BVOperator,
    bv_delta,
    bv_delta_explicit,
    bv_delta_monomial,
    bv_twisted,
    gerstenhaber_via_bv,
)
from poissonbv.calculus.modular import modular_derivation
from poissonbv.core.errors import DegreeOutOfRangeError, NotClosedError, NotFreePresentationError
from poissonbv.document import LoadedStructure


class TestBVDelta:
    """Tests for Delta = dag^-1 . d . dag."""

    def test_euler_field(self, plane: SmoothPresentation) -> None:
        """Delta(x (dx)*) = -1."""
        op = BVOperator.on(plane)
        assert bv_delta(op, Multivector.parse("x*(d x)*", plane)) == Multivector.scalar(plane, -1)

    def test_functions(self, plane: SmoothPresentation) -> None:
        """Delta kills functions."""
        op = BVOperator.on(plane)
        result = bv_delta(op, Multivector.parse("x*y", plane))
        assert result.degree == 0
        assert result.is_zero()

    def test_bivector_is_modular(self, quadratic: LoadedStructure) -> None:
        """Delta(pi) = phi_vol = x (dx)* - y (dy)*."""
        op = BVOperator.on(quadratic.pres)
        delta = bv_delta(op, quadratic.poisson.pi)
        assert delta == modular_derivation(quadratic.poisson).phi
        assert str(delta) == "x*(d x)* - y*(d y)*"

    def test_degree_above_dimension(self, plane: SmoothPresentation) -> None:
        """Delta is defined up to degree n."""
        op = BVOperator.on(plane)
        with pytest.raises(DegreeOutOfRangeError):
            bv_delta(op, Multivector.zero(plane, 3))

    def test_squares_to_zero(self, space: SmoothPresentation) -> None:
        """Delta^2 = 0."""
        op = BVOperator.on(space)
        P = Multivector.parse("x*y*(d x)* ^ (d z)* + z^3*(d y)* ^ (d z)*", space)
        assert bv_delta(op, bv_delta(op, P)).is_zero()

    @pytest.mark.parametrize(
        "text", ["x*(d y)* - z^2*(d x)*", "(x*y + 1)*(d x)* ^ (d z)* - y*(d y)* ^ (d z)*"]
    )
    def test_routes_agree_on_sphere(self, sphere: LoadedStructure, text: str) -> None:
        """The duality route equals the dual-basis formula."""
        op = BVOperator.on(sphere.pres)
        P = Multivector.parse(text, sphere.pres)
        assert bv_delta(op, P) == bv_delta_explicit(sphere.pres, P)


class TestMonomialClosedForm:
    """Tests for the free closed form."""

    def test_matches(self, space: SmoothPresentation) -> None:
        """Delta(x^2 y (dx)* ^ (dy)*) = x^2 (dx)* - 2xy (dy)*."""
        x, y, _ = space.ring.gens
        a = x**2 * y
        P = Multivector.basis(space, (0, 1), a)
        expected = Multivector.parse("x^2*(d x)* - 2*x*y*(d y)*", space)
        assert bv_delta_monomial(space, a, (0, 1)) == expected
        assert bv_delta(BVOperator.on(space), P) == expected

    def test_requires_free(self, sphere: LoadedStructure) -> None:
        """The closed form only holds on free presentations."""
        with pytest.raises(NotFreePresentationError):
            bv_delta_monomial(sphere.pres, sphere.pres.ring.one, (0,))


class TestGeneratedBracket:
    """The bracket generated by Delta is the Schouten bracket."""

    def test_vector_on_function(self, plane: SmoothPresentation) -> None:
        """[(dx)*, x] = 1."""
        op = BVOperator.on(plane)
        P = Multivector.basis(plane, (0,))
        Q = Multivector.parse("x", plane)
        assert gerstenhaber_via_bv(op, P, Q) == Multivector.scalar(plane, 1)

    def test_bivectors(self, so3: LoadedStructure) -> None:
        """[pi, x (dy)*] agrees with the Schouten bracket."""
        op = BVOperator.on(so3.pres)
        Q = Multivector.parse("x*(d y)*", so3.pres)
        assert gerstenhaber_via_bv(op, so3.poisson.pi, Q) == schouten(so3.poisson.pi, Q)


class TestTwistedBV:
    """Tests for Delta twisted by a closed 1-form."""

    def test_open_twist_rejected(self, plane: SmoothPresentation) -> None:
        """The twist must be closed."""
        with pytest.raises(NotClosedError):
            BVOperator.on(plane, KForm.parse("x*d y", plane))

    def test_routes_agree(self, quadratic: LoadedStructure) -> None:
        """Delta_t(y (dx)*) = y through d_t and through the formula."""
        pres = quadratic.pres
        op = BVOperator.on(pres, KForm.basis(pres, (0,)))
        P = Multivector.parse("y*(d x)*", pres)
        expected = Multivector.parse("y", pres)
        assert bv_delta(op, P) == expected
        assert bv_twisted(op, P) == expected

    def test_without_twist(self, plane: SmoothPresentation) -> None:
        """With no twist the formula route is plain Delta."""
        op = BVOperator.on(plane)
        P = Multivector.parse("x*(d x)*", plane)
        assert bv_twisted(op, P) == bv_delta(op, P)

    def test_squares_to_zero(self, quadratic: LoadedStructure) -> None:
        """Delta_t^2 = 0 for a closed twist."""
        pres = quadratic.pres
        op = BVOperator.on(pres, KForm.parse("y*d x + x*d y", pres))
        P = Multivector.parse("x^2*(d x)* ^ (d y)*", pres)
        assert bv_delta(op, bv_delta(op, P)).is_zero()
