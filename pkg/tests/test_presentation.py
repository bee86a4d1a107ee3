"""Tests for smooth presentations and their validation."""

import pytest

from poissonbv.algebra.presentation import SmoothPresentation, determinant, permutation_sign
from poissonbv.core.errors import DegreeOutOfRangeError, IndexOutOfRangeError
from poissonbv.document import LoadedStructure


class TestFreePresentation:
    """Tests for the free constructor."""

    def test_shape(self, space: SmoothPresentation) -> None:
        """E is the identity and vol = dx ^ dy ^ dz."""
        assert space.is_free
        assert (space.r, space.n) == (3, 3)
        assert dict(space.volume_a) == {(0, 1, 2): space.ring.one}

    def test_validates(self, plane: SmoothPresentation) -> None:
        """Every check passes with the expected notes."""
        report = plane.validate()
        assert report.passed
        assert "trace = 2" in report.notes
        assert "sum a_I*b_I = 1" in report.notes

    def test_dual_derivation_is_partial(self, plane: SmoothPresentation) -> None:
        """(dx_i)* is d/dx_i on a free ring."""
        x, y = plane.ring.gens
        assert plane.dual_derivation(1, x**2 * y) == x**2

    def test_subsets(self, space: SmoothPresentation) -> None:
        """Sorted subsets in lexicographic order; out-of-range sizes are empty."""
        assert space.subsets(2) == [(0, 1), (0, 2), (1, 2)]
        assert space.subsets(4) == []


class TestSpherePresentation:
    """Tests for the sphere's dual-basis data."""

    def test_validates(self, sphere: LoadedStructure) -> None:
        """trace E = 2 and sum a_I b_I = 1 after reduction."""
        report = sphere.pres.validate()
        assert report.passed, report.render()
        assert "trace = 2" in report.notes
        assert "sum a_I*b_I = 1" in report.notes

    def test_not_free(self, sphere: LoadedStructure) -> None:
        """A quotient ring is not a free presentation."""
        assert not sphere.pres.is_free
        assert sphere.pres.n == 2

    def test_dual_derivation(self, sphere: LoadedStructure) -> None:
        """(dz)*(z) = E[z][z] = x^2 + y^2."""
        pres = sphere.pres
        x, y, z = pres.ring.gens
        assert pres.dual_derivation(2, z) == x**2 + y**2


class TestValidationFailures:
    """Presentation checks report residues instead of raising."""

    def test_wrong_trace(self, plane: SmoothPresentation) -> None:
        """Identity E with n = 1 on two generators fails the trace check."""
        ring = plane.ring
        one = ring.one
        pres = SmoothPresentation(ring, 1, plane.dual_matrix, {(0,): one}, {(0,): one})
        failing = {f.check for f in pres.validate().failures}
        assert "trace" in failing
        assert "top-degree" in failing

    def test_dimension_out_of_range(self, plane: SmoothPresentation) -> None:
        """n must lie in 0..r."""
        with pytest.raises(DegreeOutOfRangeError):
            SmoothPresentation(plane.ring, 3, plane.dual_matrix, {}, {})

    def test_bad_volume_key(self, plane: SmoothPresentation) -> None:
        """Volume keys are sorted n-subsets."""
        one = plane.ring.one
        with pytest.raises(IndexOutOfRangeError):
            SmoothPresentation(plane.ring, 2, plane.dual_matrix, {(1, 0): one}, {(0, 1): one})


class TestDeterminant:
    """Tests for the small determinant helper."""

    def test_permutation_sign(self) -> None:
        """Odd permutations are negative."""
        assert permutation_sign((0, 1, 2)) == 1
        assert permutation_sign((1, 0, 2)) == -1

    def test_two_by_two(self, plane: SmoothPresentation) -> None:
        """det [[x, y], [1, x]] = x^2 - y."""
        ring = plane.ring
        x, y = ring.gens
        assert determinant([[x, y], [ring.one, x]], ring) == x**2 - y
        assert determinant([], ring) == ring.one
