"""Tests for the duality maps and the twisted duality square."""

import pytest

from poissonbv.algebra.exterior import KForm, Multivector
from poissonbv.algebra.presentation import SmoothPresentation
from poissonbv.calculus.duality import (
    DualityContext,
    dag,
    dag_inverse,
    dag_sign,
    ddag,
    ddag_factored,
    flat,
    verify_duality_square,
)
from poissonbv.calculus.poisson import hamiltonian
from poissonbv.core.errors import DegreeOutOfRangeError
from poissonbv.document import LoadedStructure


class TestDagSign:
    """Tests for the sign of the signed duality map."""

    @pytest.mark.parametrize(("p", "sign"), [(0, 1), (1, -1), (2, -1), (3, 1), (4, 1)])
    def test_values(self, p: int, sign: int) -> None:
        """(-1)^{p(p+1)/2} has period four."""
        assert dag_sign(p) == sign


class TestDualityMaps:
    """Tests for ddag, flat and dag."""

    def test_plane(self, plane: SmoothPresentation) -> None:
        """(dx)* -> dy and back."""
        ctx = DualityContext(plane)
        dx_star = Multivector.basis(plane, (0,))
        assert ddag(ctx, dx_star) == KForm.basis(plane, (1,))
        assert dag(ctx, dx_star) == -KForm.basis(plane, (1,))
        assert flat(ctx, KForm.basis(plane, (1,))) == dx_star

    def test_functions_go_to_volume(self, space: SmoothPresentation) -> None:
        """ddag(1) = vol."""
        ctx = DualityContext(space)
        assert ddag(ctx, Multivector.scalar(space, 1)) == ctx.vol

    @pytest.mark.parametrize("p", [0, 1, 2, 3])
    def test_round_trip_space(self, space: SmoothPresentation, p: int) -> None:
        """dag_inverse . dag is the identity."""
        ctx = DualityContext(space)
        F = Multivector.basis(space, tuple(range(p)), space.ring.gen(0) ** 2 + space.ring.gen(2))
        assert dag_inverse(ctx, dag(ctx, F)) == F

    @pytest.mark.parametrize("p", [0, 1, 2])
    def test_round_trip_sphere(self, sphere: LoadedStructure, p: int) -> None:
        """The round trip holds on the sphere's canonical representatives."""
        ctx = DualityContext(sphere.pres)
        x, y, z = sphere.pres.ring.gens
        F = Multivector.basis(sphere.pres, tuple(range(p)), x * y - z)
        assert dag_inverse(ctx, dag(ctx, F)) == F

    def test_factored(self, sphere: LoadedStructure) -> None:
        """ddag agrees with its expansion over basis multivectors."""
        ctx = DualityContext(sphere.pres)
        F = Multivector.parse("x*(d y)* - z^2*(d x)*", sphere.pres)
        assert ddag(ctx, F) == ddag_factored(ctx, F)

    def test_degree_out_of_range(self, sphere: LoadedStructure) -> None:
        """Degrees above the smooth dimension are rejected."""
        ctx = DualityContext(sphere.pres)
        with pytest.raises(DegreeOutOfRangeError):
            ddag(ctx, Multivector.zero(sphere.pres, 3))
        with pytest.raises(DegreeOutOfRangeError):
            flat(ctx, KForm.zero(sphere.pres, 3))


class TestDualitySquare:
    """partial_{phi + phi_vol} . dag = dag . delta_phi."""

    @pytest.mark.parametrize("p", [0, 1, 2])
    def test_quadratic(self, quadratic: LoadedStructure, p: int) -> None:
        """The square commutes once the modular twist is included."""
        ctx = DualityContext(quadratic.pres)
        F = Multivector.basis(quadratic.pres, tuple(range(p)), quadratic.pres.ring.gen(1) ** 2)
        report = verify_duality_square(ctx, quadratic.poisson, F)
        assert report.passed, report.render()

    def test_untwisted_square_fails(self, quadratic: LoadedStructure) -> None:
        """Without phi_vol the square breaks already on constants."""
        ctx = DualityContext(quadratic.pres)
        F = Multivector.scalar(quadratic.pres, 1)
        report = verify_duality_square(ctx, quadratic.poisson, F, include_modular_twist=False)
        assert not report.passed
        assert report.failures[0].check == "square[p=0]"

    def test_untwisted_holds_when_unimodular(self, so3: LoadedStructure) -> None:
        """phi_vol = 0 makes the modular twist irrelevant."""
        ctx = DualityContext(so3.pres)
        F = Multivector.parse("x*(d y)* ^ (d z)*", so3.pres)
        assert verify_duality_square(ctx, so3.poisson, F, include_modular_twist=False).passed

    def test_with_derivation(self, sphere: LoadedStructure) -> None:
        """A Hamiltonian twist keeps the square commuting on the sphere."""
        ctx = DualityContext(sphere.pres)
        phi = hamiltonian(sphere.poisson, sphere.pres.ring.gen(2))
        F = Multivector.parse("y*(d x)*", sphere.pres)
        report = verify_duality_square(ctx, sphere.poisson, F, phi)
        assert report.passed, report.render()
