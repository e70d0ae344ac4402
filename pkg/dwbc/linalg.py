"""Determinants over rationals, polynomial rings and mpmath numbers.

Exact determinants go through sympy's ``DomainMatrix`` (fraction-free
elimination over QQ or over a polynomial ring); float determinants go to the
backend's mpmath context.
"""

from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from .backend import RATIONAL, ScalarBackend
from .errors import InvalidQueryError


def _check_square(rows: Sequence[Sequence[Any]]) -> int:
    size = len(rows)
    for index, row in enumerate(rows):
        if len(row) != size:
            raise InvalidQueryError(
                f"Determinant needs a square matrix: row {index} has {len(row)} entries, expected {size}"
            )
    return size


def det(rows: Sequence[Sequence[Any]], backend: ScalarBackend | None = None) -> Any:
    """Determinant of a square matrix.

    Args:
        rows: Matrix rows. Entries are all polynomials of one ring, or scalars
            of the given backend.
        backend: Scalar backend for scalar entries (rational by default).

    Returns:
        The determinant, of the entry type. The empty matrix gives 1.

    Raises:
        InvalidQueryError: If the matrix is not square.

    Examples:
        >>> det([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]])
        Fraction(-2, 1)
    """
    size = _check_square(rows)
    polys = [entry for row in rows for entry in row if isinstance(entry, PolyElement)]
    if polys:
        R = polys[0].ring
        matrix = DomainMatrix(
            [[entry if isinstance(entry, PolyElement) else R(entry) for entry in row] for row in rows],
            (size, size),
            R.to_domain(),
        )
        return matrix.det()
    backend = backend or RATIONAL
    if size == 0:
        return backend.one
    return backend.det([list(row) for row in rows])


def cofactor_det(rows: Sequence[Sequence[Any]]) -> Any:
    """Determinant by Laplace expansion along the first row (small matrices)."""
    size = _check_square(rows)
    if size == 0:
        return Fraction(1)
    if size == 1:
        return rows[0][0]
    total: Any = 0
    for column in range(size):
        minor = [list(row[:column]) + list(row[column + 1 :]) for row in rows[1:]]
        term = rows[0][column] * cofactor_det(minor)
        total = total + term if column % 2 == 0 else total - term
    return total


__all__ = ["det", "cofactor_det"]
