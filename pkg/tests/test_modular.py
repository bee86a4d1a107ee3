"""Tests for modular derivations and witness searches."""

import pytest

from poissonbv.algebra.expressions import parse_poly
from poissonbv.algebra.exterior import mv_apply
from poissonbv.calculus.modular import (
    hamiltonian_witness,
    modular_derivation,
    modular_oracle,
    pseudo_unimodular_witness,
)
from poissonbv.calculus.poisson import hamiltonian, validate_poisson_derivation
from poissonbv.config import Settings, configure_settings
from poissonbv.core.errors import PresentationMismatchError
from poissonbv.document import LoadedStructure


class TestModularDerivation:
    """Tests for the dual-basis formula."""

    def test_quadratic_plane(self, quadratic: LoadedStructure) -> None:
        """{x, y} = xy has phi = x (dx)* - y (dy)* and no volume correction."""
        data = modular_derivation(quadratic.poisson)
        assert str(data.phi) == "x*(d x)* - y*(d y)*"
        assert data.phi1 == data.phi
        assert data.phi2.is_zero()

    @pytest.mark.parametrize("fixture", ["symplectic", "so3", "zero_structure", "sphere"])
    def test_unimodular(self, fixture: str, request: pytest.FixtureRequest) -> None:
        """Constant, Lie-Poisson so(3) and the round sphere are unimodular."""
        loaded: LoadedStructure = request.getfixturevalue(fixture)
        assert modular_derivation(loaded.poisson, loaded.pres).phi.is_zero()

    def test_is_poisson_derivation(self, quadratic: LoadedStructure) -> None:
        """The modular field preserves pi."""
        validate_poisson_derivation(quadratic.poisson, modular_derivation(quadratic.poisson).phi)

    def test_presentation_mismatch(self, quadratic: LoadedStructure, so3: LoadedStructure) -> None:
        """The presentation must be the structure's own."""
        with pytest.raises(PresentationMismatchError):
            modular_derivation(quadratic.poisson, so3.pres)


class TestModularOracle:
    """The divergence of Hamiltonians matches the formula."""

    @pytest.mark.parametrize("text", ["x", "y", "x*y", "x^2 - 3*y"])
    def test_quadratic_plane(self, quadratic: LoadedStructure, text: str) -> None:
        """L_{H_a}(vol) / vol = phi(a)."""
        a = parse_poly(text, quadratic.pres.ring)
        phi = modular_derivation(quadratic.poisson).phi
        assert modular_oracle(quadratic.poisson, a) == mv_apply(phi, [a])

    def test_sphere(self, sphere: LoadedStructure) -> None:
        """Hamiltonian flows on the sphere preserve its area form."""
        x, _, z = sphere.pres.ring.gens
        for a in (x, z, x * z):
            assert modular_oracle(sphere.poisson, a).is_zero()


class TestHamiltonianWitness:
    """Tests for the bounded Hamiltonian search."""

    def test_finds_generator(self, so3: LoadedStructure) -> None:
        """H_u = H_x is solved by u = x."""
        x = so3.pres.ring.gen(0)
        assert hamiltonian_witness(so3.poisson, hamiltonian(so3.poisson, x), max_degree=2) == x

    def test_modular_field_is_not_hamiltonian(self, quadratic: LoadedStructure) -> None:
        """x (dx)* - y (dy)* is not H_u for any polynomial u."""
        phi = modular_derivation(quadratic.poisson).phi
        assert hamiltonian_witness(quadratic.poisson, phi, max_degree=3) is None


class TestPseudoUnimodularWitness:
    """Tests for the closed 1-form search."""

    def test_unimodular_gives_zero(self, so3: LoadedStructure) -> None:
        """phi = 0 is reached by varpi = 0."""
        witness = pseudo_unimodular_witness(so3.poisson, max_degree=1)
        assert witness is not None
        assert witness.is_zero()

    def test_quadratic_has_none(self, quadratic: LoadedStructure) -> None:
        """iota_varpi(pi) always carries a factor x*y."""
        assert pseudo_unimodular_witness(quadratic.poisson, max_degree=4) is None

    def test_bound_from_settings(self, quadratic: LoadedStructure) -> None:
        """Without an explicit bound the configured one is used."""
        configure_settings(Settings(witness_max_degree=1))
        assert pseudo_unimodular_witness(quadratic.poisson) is None
