"""Polynomial rings, presentations and exterior calculus."""

from poissonbv.algebra.exterior import (
    KForm,
    Multivector,
    contract_form,
    contract_mv,
    d_twisted,
    de_rham,
    form_wedge,
    lie_derivative,
    mv_apply,
    mv_wedge,
    pair,
    schouten,
)
from poissonbv.algebra.presentation import SmoothPresentation, validate_presentation
from poissonbv.algebra.ring import Poly, PolynomialRing, RewriteRule, normal_form, partial_derivative

__all__ = [
    "KForm",
    "Multivector",
    "Poly",
    "PolynomialRing",
    "RewriteRule",
    "SmoothPresentation",
    "contract_form",
    "contract_mv",
    "d_twisted",
    "de_rham",
    "form_wedge",
    "lie_derivative",
    "mv_apply",
    "mv_wedge",
    "normal_form",
    "pair",
    "partial_derivative",
    "schouten",
    "validate_presentation",
]
