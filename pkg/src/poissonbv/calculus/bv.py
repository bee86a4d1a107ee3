"""The BV operator on multivectors and the bracket it generates.

The operator is transported from the de Rham differential through the
signed duality map: Delta = dag^-1 . d . dag. A closed 1-form varpi twists it
to Delta_t = dag^-1 . d_t . dag with d_t = d - varpi ^ (-).
"""

from __future__ import annotations

from dataclasses import dataclass

from poissonbv.algebra.exterior import (
    KForm,
    Multivector,
    contract_mv,
    d_twisted,
    de_rham,
    mv_apply,
    mv_wedge,
)
from poissonbv.algebra.presentation import SmoothPresentation
from poissonbv.algebra.ring import Poly, partial_derivative, total
from poissonbv.calculus.duality import DualityContext, dag, dag_inverse
from poissonbv.calculus.poisson import require_closed
from poissonbv.core.errors import DegreeOutOfRangeError, NotFreePresentationError


@dataclass(frozen=True)
class BVOperator:
    """Delta on a presentation, optionally twisted by a closed 1-form.

    Raises:
        NotClosedError: If the twist is not closed
    """

    ctx: DualityContext
    twist: KForm | None = None

    def __post_init__(self) -> None:
        if self.twist is not None:
            require_closed(self.twist)

    @classmethod
    def on(cls, pres: SmoothPresentation, twist: KForm | None = None) -> BVOperator:
        """Operator over ``pres``."""
        return cls(DualityContext(pres), twist)

    @property
    def pres(self) -> SmoothPresentation:
        """The underlying presentation."""
        return self.ctx.pres


def _transport(op: BVOperator, P: Multivector, *, twisted: bool) -> Multivector:
    p = P.degree
    if p == 0:
        return Multivector.zero(op.pres, 0)
    if p > op.ctx.n:
        return Multivector.zero(op.pres, p - 1)
    form = dag(op.ctx, P)
    if twisted and op.twist is not None:
        image = d_twisted(op.twist, form)
    else:
        image = de_rham(form)
    return dag_inverse(op.ctx, image)


def bv_delta(op: BVOperator, P: Multivector) -> Multivector:
    """Delta(P) = dag^-1(d(dag P)), through d_t when the operator carries a twist.

    A degree-0 input gives the zero multivector of degree 0.

    Raises:
        DegreeOutOfRangeError: If deg P > n
    """
    if P.degree > op.ctx.n:
        msg = f"multivector degree {P.degree} exceeds the smooth dimension {op.ctx.n}"
        raise DegreeOutOfRangeError(msg, details={"degree": P.degree, "n": op.ctx.n})
    return _transport(op, P, twisted=True)


def bv_delta_explicit(pres: SmoothPresentation, P: Multivector) -> Multivector:
    """Delta(P) from the dual-basis formula, on generator tuples K of size p - 1.

    Delta(P)(x_K) = (-1)^p [sum_l (dx_l)*(P(x_K, x_l)) + sum_I P(x_K, a_I) b_I]
    """
    p = P.degree
    if p == 0:
        return Multivector.zero(pres, 0)
    ring = pres.ring
    gens = ring.gens
    sign = -1 if p % 2 else 1
    values: dict[tuple[int, ...], Poly] = {}
    for k in pres.subsets(p - 1):
        head = [gens[i] for i in k]
        parts = [pres.dual_derivation(s, mv_apply(P, [*head, gens[s]])) for s in range(pres.r)]
        parts.extend(
            mv_apply(P, [*head, a]) * pres.volume_b.get(index, ring.zero)
            for index, a in pres.volume_a.items()
        )
        value = total(parts, ring).scale(sign)
        if not value.is_zero():
            values[k] = value
    return Multivector.from_values(pres, p - 1, values)


def bv_twisted(op: BVOperator, P: Multivector) -> Multivector:
    """Delta_t(P) = Delta(P) - (-1)^p iota_varpi(P)."""
    untwisted = _transport(op, P, twisted=False)
    if op.twist is None or P.degree == 0:
        return untwisted
    sign = -1 if P.degree % 2 else 1
    return untwisted - contract_mv(op.twist, P).scale(sign)


def gerstenhaber_via_bv(op: BVOperator, P: Multivector, Q: Multivector) -> Multivector:
    """(-1)^p (Delta(P^Q) - Delta(P)^Q - (-1)^p P^Delta(Q)), using the operator's own route."""
    p, q = P.degree, Q.degree
    m = p + q - 1
    if m < 0:
        return Multivector.zero(op.pres, 0)
    sign = -1 if p % 2 else 1
    result = _transport(op, mv_wedge(P, Q), twisted=True)
    if p > 0:
        result = result - mv_wedge(_transport(op, P, twisted=True), Q)
    if q > 0:
        result = result - mv_wedge(P, _transport(op, Q, twisted=True)).scale(sign)
    return result.scale(sign)


def bv_delta_monomial(pres: SmoothPresentation, a: Poly, index: tuple[int, ...]) -> Multivector:
    """Closed form on a free presentation: Delta(a d_J) = sum_j (-1)^j da/dx_{J_j} d_{J - j}.

    Raises:
        NotFreePresentationError: For quotient rings
    """
    if not pres.is_free:
        msg = "the closed form holds on free polynomial presentations"
        raise NotFreePresentationError(msg)
    p = len(index)
    if p == 0:
        return Multivector.zero(pres, 0)
    result = Multivector.zero(pres, p - 1)
    for j, i in enumerate(index):
        rest = index[:j] + index[j + 1 :]
        term = Multivector.basis(pres, rest, partial_derivative(a, i))
        result = result + term.scale(1 if j % 2 else -1)
    return result
