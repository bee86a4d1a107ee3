"""Poisson calculus: brackets, differentials, modular class, duality and BV operators."""

from poissonbv.calculus.bv import (
    BVOperator,
    bv_delta,
    bv_delta_explicit,
    bv_delta_monomial,
    bv_twisted,
    gerstenhaber_via_bv,
)
from poissonbv.calculus.duality import (
    DualityContext,
    dag,
    dag_inverse,
    ddag,
    flat,
    verify_duality_square,
)
from poissonbv.calculus.homology import (
    StrandTable,
    cohomology_dims,
    duality_dim_check,
    euler_characteristic,
    homology_dims,
)
from poissonbv.calculus.modular import (
    ModularData,
    hamiltonian_witness,
    modular_derivation,
    modular_oracle,
    pseudo_unimodular_witness,
)
from poissonbv.calculus.poisson import (
    PoissonDerivation,
    PoissonStructure,
    bracket,
    casimir_basis,
    chain_partial,
    cochain_delta,
    derivation_from_closed_form,
    hamiltonian,
    twisted_chain_partial,
    validate_poisson,
    validate_poisson_derivation,
)

__all__ = [
    "BVOperator",
    "DualityContext",
    "ModularData",
    "PoissonDerivation",
    "PoissonStructure",
    "StrandTable",
    "bracket",
    "bv_delta",
    "bv_delta_explicit",
    "bv_delta_monomial",
    "bv_twisted",
    "casimir_basis",
    "chain_partial",
    "cochain_delta",
    "cohomology_dims",
    "dag",
    "dag_inverse",
    "ddag",
    "derivation_from_closed_form",
    "duality_dim_check",
    "euler_characteristic",
    "flat",
    "gerstenhaber_via_bv",
    "hamiltonian",
    "hamiltonian_witness",
    "homology_dims",
    "modular_derivation",
    "modular_oracle",
    "pseudo_unimodular_witness",
    "twisted_chain_partial",
    "validate_poisson",
    "validate_poisson_derivation",
    "verify_duality_square",
]
