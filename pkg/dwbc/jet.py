"""Truncated power series (jets).

A jet holds the Taylor coefficients c_0..c_K of a function about a point.
Coefficients can be Fractions, mpmath numbers, or sympy polynomials in other
variables; the arithmetic only uses +, -, * and one inversion of c_0, so the
same class serves the homogeneous determinant, the coinciding-point limit of
the Phi kernel and the Laurent expansions inside residue extraction.

Examples:
    >>> from dwbc.jet import trig_jet
    >>> trig_jet("sin", 0, 0, 3).coefficients
    (Fraction(0, 1), Fraction(1, 1), Fraction(0, 1), Fraction(-1, 6))
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from sympy.polys.rings import PolyElement

from .backend import RATIONAL, ScalarBackend
from .errors import InvalidQueryError, SingularParameterError


def _invert(value: Any) -> Any:
    if isinstance(value, PolyElement):
        if value.is_zero or not value.is_ground:
            raise SingularParameterError(f"Leading jet coefficient {value} is not invertible")
        return value.ring.one.quo_ground(value.LC)
    if value == 0:
        raise SingularParameterError("Leading jet coefficient is zero")
    return 1 / value


@dataclass(frozen=True)
class Jet:
    """Taylor coefficients of a function to order K.

    Attributes:
        coefficients: c_0..c_K.
        variable: Name of the expansion variable.
        center: Expansion point (informational).
    """

    coefficients: tuple[Any, ...]
    variable: str = "x"
    center: Any = 0

    def __post_init__(self):
        if not self.coefficients:
            raise InvalidQueryError("A jet needs at least one coefficient")

    @classmethod
    def constant(cls, value: Any, order: int, zero: Any, variable: str = "x") -> "Jet":
        return cls((value,) + (zero,) * order, variable)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, index: int) -> Any:
        return self.coefficients[index]

    def _zero(self) -> Any:
        return self.coefficients[0] * 0

    def _pair(self, other: Any) -> tuple[tuple[Any, ...], tuple[Any, ...]]:
        if isinstance(other, Jet):
            size = min(len(self.coefficients), len(other.coefficients))
            return self.coefficients[:size], other.coefficients[:size]
        zero = self._zero()
        lifted = (other,) + (zero,) * self.order
        return self.coefficients, lifted

    def _new(self, coefficients: Sequence[Any]) -> "Jet":
        return Jet(tuple(coefficients), self.variable, self.center)

    def __add__(self, other: Any) -> "Jet":
        left, right = self._pair(other)
        return self._new([x + y for x, y in zip(left, right)])

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Jet":
        left, right = self._pair(other)
        return self._new([x - y for x, y in zip(left, right)])

    def __rsub__(self, other: Any) -> "Jet":
        return (-self) + other

    def __neg__(self) -> "Jet":
        return self._new([-x for x in self.coefficients])

    def __mul__(self, other: Any) -> "Jet":
        if not isinstance(other, Jet):
            return self.scale(other)
        left, right = self._pair(other)
        out = []
        for n in range(len(left)):
            total = left[0] * right[n]
            for i in range(1, n + 1):
                total = total + left[i] * right[n - i]
            out.append(total)
        return self._new(out)

    def __rmul__(self, other: Any) -> "Jet":
        return self._new([other * x for x in self.coefficients])

    def __pow__(self, exponent: int) -> "Jet":
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = Jet.constant(self._zero() + 1, self.order, self._zero(), self.variable)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor: Any) -> "Jet":
        return self._new([x * factor for x in self.coefficients])

    def truncate(self, order: int) -> "Jet":
        return self._new(self.coefficients[: order + 1])

    def reciprocal(self) -> "Jet":
        """Jet of 1/f; requires an invertible c_0."""
        inverse = _invert(self.coefficients[0])
        out = [inverse]
        for n in range(1, len(self.coefficients)):
            total = self.coefficients[1] * out[n - 1]
            for i in range(2, n + 1):
                total = total + self.coefficients[i] * out[n - i]
            out.append(-(total * inverse))
        return self._new(out)

    def scaled_reciprocal(self) -> "Jet":
        """Jet G with 1/f = G / c_0**(K+1), without dividing by c_0.

        Coefficient n of G is E_n c_0**(K-n), where E_0 = 1 and
        E_n = -sum_{i=1..n} c_i E_{n-i} c_0**(i-1).
        """
        order = self.order
        c = self.coefficients
        one = c[0] * 0 + 1
        powers = [one]
        for _ in range(order):
            powers.append(powers[-1] * c[0])
        e = [one]
        for n in range(1, order + 1):
            total = c[1] * e[n - 1]
            for i in range(2, n + 1):
                total = total + c[i] * e[n - i] * powers[i - 1]
            e.append(-total)
        return self._new([e[n] * powers[order - n] for n in range(order + 1)])

    def dilate(self, factor: Any) -> "Jet":
        """Jet of f(factor * x): coefficient j scaled by factor**j."""
        out = []
        scale = factor * 0 + 1
        for x in self.coefficients:
            out.append(x * scale)
            scale = scale * factor
        return self._new(out)

    def derivative(self) -> "Jet":
        """Jet of f' (one order shorter)."""
        if self.order == 0:
            return self._new([self._zero()])
        return self._new([(j + 1) * self.coefficients[j + 1] for j in range(self.order)])

    def derivatives(self) -> list[Any]:
        """Values f^(m)(center) = m! c_m for m = 0..K."""
        return [math.factorial(m) * x for m, x in enumerate(self.coefficients)]


def trig_jet(
    kind: str,
    offset: Any,
    center: Any,
    order: int,
    backend: ScalarBackend = RATIONAL,
) -> Jet:
    """Jet of sin(x + offset) or cos(x + offset) about x = center.

    Args:
        kind: "sin" or "cos".
        offset: Constant shift of the argument.
        center: Expansion point.
        order: Truncation order K >= 0.
        backend: Scalar backend; the rational one only allows center + offset = 0.

    Returns:
        Jet whose coefficient j is the j-th derivative at the center over j!.

    Raises:
        InvalidQueryError: For an unknown kind or a negative order.
        BackendError: If the backend cannot evaluate the function there.
    """
    if order < 0:
        raise InvalidQueryError(f"Jet order must be >= 0, got {order}")
    argument = backend.convert(center) + backend.convert(offset)
    s, c = backend.sin(argument), backend.cos(argument)
    if kind == "sin":
        cycle = (s, c, -s, -c)
    elif kind == "cos":
        cycle = (c, -s, -c, s)
    else:
        raise InvalidQueryError(f"Unknown trig kind {kind!r}")
    coefficients = tuple(cycle[j % 4] / backend.factorial(j) for j in range(order + 1))
    return Jet(coefficients, "x", backend.convert(center))


__all__ = ["Jet", "trig_jet"]
