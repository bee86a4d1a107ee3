"""Tests for strand tables of Poisson (co)homology."""

import pytest

from poissonbv.algebra.presentation import SmoothPresentation
from poissonbv.calculus.homology import (
    bracket_weight,
    cohomology_dims,
    dimension,
    duality_dim_check,
    euler_characteristic,
    homology_dims,
)
from poissonbv.calculus.poisson import PoissonStructure, hamiltonian
from poissonbv.core.errors import NotFreePresentationError, NotGradedError
from poissonbv.document import LoadedStructure


class TestBracketWeight:
    """Tests for the grading of a bracket table."""

    def test_weights(
        self, symplectic: LoadedStructure, quadratic: LoadedStructure, so3: LoadedStructure
    ) -> None:
        """Constant, quadratic and linear brackets."""
        assert bracket_weight(symplectic.poisson) == 0
        assert bracket_weight(quadratic.poisson) == 2
        assert bracket_weight(so3.poisson) == 1

    def test_zero_structure(self, zero_structure: LoadedStructure) -> None:
        """The zero bracket counts as weight 1."""
        assert bracket_weight(zero_structure.poisson) == 1

    def test_inhomogeneous(self, plane: SmoothPresentation) -> None:
        """{x, y} = x + 1 has no single weight."""
        x = plane.ring.gen(0)
        poisson = PoissonStructure.from_table(plane, {(0, 1): x + 1})
        with pytest.raises(NotGradedError):
            bracket_weight(poisson)

    def test_quotient_rejected(self, sphere: LoadedStructure) -> None:
        """Strand tables need a free presentation."""
        with pytest.raises(NotFreePresentationError):
            bracket_weight(sphere.poisson)


class TestDimensions:
    """Tests for strand tables."""

    def test_piece_dimension(self, so3: LoadedStructure) -> None:
        """C(3, p) times the number of degree-d monomials."""
        assert dimension(so3.poisson, 1, 2) == 3 * 6
        assert dimension(so3.poisson, 4, 0) == 0
        assert dimension(so3.poisson, 0, -1) == 0

    def test_symplectic_cohomology(self, symplectic: LoadedStructure) -> None:
        """The symplectic plane has only the constants in cohomology."""
        table = cohomology_dims(symplectic.poisson, None, range(3), range(3))
        for (p, d), entry in table.entries.items():
            assert entry.homology == (1 if (p, d) == (0, 0) else 0)

    def test_symplectic_homology(self, symplectic: LoadedStructure) -> None:
        """Only dx ^ dy survives in homology."""
        table = homology_dims(symplectic.poisson, None, range(3), range(3))
        for (q, d), entry in table.entries.items():
            assert entry.homology == (1 if (q, d) == (2, 0) else 0)

    def test_render_lines(self, symplectic: LoadedStructure) -> None:
        """One 'p d ker im H' line per entry."""
        table = cohomology_dims(symplectic.poisson, None, range(2), range(1))
        assert table.render("lines") == "0 0 1 0 1\n1 0 2 2 0"

    def test_render_text(self, symplectic: LoadedStructure) -> None:
        """Aligned columns under a header."""
        table = cohomology_dims(symplectic.poisson, None, range(1), range(1))
        header, row = table.render().splitlines()
        assert header.split() == ["p", "d", "ker", "im", "H"]
        assert row.split() == ["0", "0", "1", "0", "1"]

    def test_twist_must_be_graded(self, quadratic: LoadedStructure) -> None:
        """A twist of the wrong coefficient degree is rejected."""
        phi = hamiltonian(quadratic.poisson, quadratic.pres.ring.gen(0))
        with pytest.raises(NotGradedError):
            cohomology_dims(quadratic.poisson, phi, range(1), range(1))

    def test_euler_characteristic(self, so3: LoadedStructure) -> None:
        """On a full strand the alternating sums agree."""
        table = cohomology_dims(so3.poisson, None, range(4), range(3))
        chain, homology = euler_characteristic(table, 0)
        assert chain == homology

    def test_euler_characteristic_quadratic(self, quadratic: LoadedStructure) -> None:
        """Strands d = s + p of the weight-2 plane: both sums vanish, homology does not."""
        table = cohomology_dims(quadratic.poisson, None, range(3), range(4))
        for strand in (0, 1):
            keys = [key for key in table.entries if table.strand(key) == strand]
            assert sorted(keys) == [(0, strand), (1, strand + 1), (2, strand + 2)]
            chain, homology = euler_characteristic(table, strand)
            assert chain == homology == 0
        assert table.entries[(0, 0)].homology == 1


class TestDualityDimensions:
    """dim PH^p = dim PH_{n-p}(R_phi_vol)."""

    def test_quadratic_twisted(self, quadratic: LoadedStructure) -> None:
        """The twisted comparison holds."""
        report = duality_dim_check(quadratic.poisson, range(3), range(4))
        assert report.passed, report.render()

    def test_quadratic_untwisted(self, quadratic: LoadedStructure) -> None:
        """Dropping the modular twist breaks it at p = 0, d = 0."""
        report = duality_dim_check(quadratic.poisson, range(3), range(2), twisted=False)
        assert not report.passed
        assert "dims[p=0, d=0]" in {f.check for f in report.failures}
        assert "(untwisted)" in report.subject

    def test_so3(self, so3: LoadedStructure) -> None:
        """Unimodular structures satisfy both versions."""
        assert duality_dim_check(so3.poisson, range(4), range(3)).passed
        assert duality_dim_check(so3.poisson, range(4), range(3), twisted=False).passed
