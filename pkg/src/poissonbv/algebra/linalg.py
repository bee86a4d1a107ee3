"""Exact rational linear algebra on sympy matrices.

Rows are sequences of Fractions; sympy does the elimination over QQ and the
results come back as Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

from sympy import Matrix, Rational

if TYPE_CHECKING:
    from collections.abc import Sequence

    from sympy import Expr


def _rational(value: Fraction | int) -> Rational:
    fraction = Fraction(value)
    return Rational(fraction.numerator, fraction.denominator)


def _to_sympy(rows: Sequence[Sequence[Fraction | int]], ncols: int) -> Matrix:
    return Matrix(len(rows), ncols, lambda i, j: _rational(rows[i][j]))


def _to_fraction(value: Expr) -> Fraction:
    rational = Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def rank(rows: Sequence[Sequence[Fraction | int]], ncols: int) -> int:
    """Rank of a rows x ncols rational matrix."""
    if not rows or ncols == 0:
        return 0
    return int(_to_sympy(rows, ncols).rank())


def solve(
    rows: Sequence[Sequence[Fraction | int]], rhs: Sequence[Fraction | int], ncols: int
) -> list[Fraction] | None:
    """One solution of A x = b, with every free unknown set to zero.

    Pivots are chosen left to right, so the answer is deterministic.

    Returns:
        The solution, or None if the system is inconsistent
    """
    if ncols == 0:
        return [] if all(Fraction(b) == 0 for b in rhs) else None
    if not rows:
        return [Fraction(0)] * ncols
    augmented = [[*row, b] for row, b in zip(rows, rhs, strict=True)]
    reduced, pivots = _to_sympy(augmented, ncols + 1).rref()
    if ncols in pivots:
        return None
    solution = [Fraction(0)] * ncols
    for row, col in enumerate(pivots):
        solution[col] = _to_fraction(reduced[row, ncols])
    return solution


def nullspace(rows: Sequence[Sequence[Fraction | int]], ncols: int) -> list[list[Fraction]]:
    """A basis of the kernel of a rows x ncols rational matrix, in rref order."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    return [[_to_fraction(v) for v in vector] for vector in _to_sympy(rows, ncols).nullspace()]
