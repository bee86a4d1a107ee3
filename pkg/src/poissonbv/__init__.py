"""poisson-bv-calc - exact Poisson calculus and BV operators.

Computes modular derivations, Poisson (co)homology differentials, the
duality between multivectors and forms, and Batalin-Vilkovisky operators
over smooth algebras given by dual-basis data, with rational arithmetic
throughout.

Quick Start:
    from poissonbv import load_structure, modular_derivation

    structure = load_structure("quadratic_plane.pois")
    print(modular_derivation(structure.poisson).phi)

Algebra:
    - PolynomialRing, Poly: rings with rewrite rules, normal forms
    - SmoothPresentation: dual basis and volume data
    - KForm, Multivector: forms and multivectors over a presentation

Calculus:
    - PoissonStructure: bracket table and bivector
    - cochain_delta, chain_partial: (twisted) Poisson differentials
    - BVOperator, bv_delta: the BV operator and its twisted variant
"""

from poissonbv.algebra import (
    KForm,
    Multivector,
    Poly,
    PolynomialRing,
    SmoothPresentation,
    contract_form,
    contract_mv,
    de_rham,
    schouten,
)
from poissonbv.calculus import (
    BVOperator,
    DualityContext,
    PoissonStructure,
    bv_delta,
    chain_partial,
    cochain_delta,
    modular_derivation,
    pseudo_unimodular_witness,
)
from poissonbv.config import Settings, configure_settings, get_settings, settings
from poissonbv.core import ErrorCode, ParseError, PoissonBVError, ValidationReport
from poissonbv.document import LoadedStructure, load_structure, load_text

__version__ = settings.version

__all__ = [
    "BVOperator",
    "DualityContext",
    "ErrorCode",
    "KForm",
    "LoadedStructure",
    "Multivector",
    "ParseError",
    "PoissonBVError",
    "PoissonStructure",
    "Poly",
    "PolynomialRing",
    "Settings",
    "SmoothPresentation",
    "ValidationReport",
    "__version__",
    "bv_delta",
    "chain_partial",
    "cochain_delta",
    "configure_settings",
    "contract_form",
    "contract_mv",
    "de_rham",
    "get_settings",
    "load_structure",
    "load_text",
    "modular_derivation",
    "pseudo_unimodular_witness",
    "schouten",
    "settings",
]
