"""Scalar backends for exact and high-precision evaluation.

Two backends share one interface. ``RationalBackend`` keeps every value as a
``fractions.Fraction`` and compares exactly; it is used for everything that
depends only on rational weights (a, b, c). ``FloatBackend`` wraps a private
mpmath context with a configurable number of decimal digits and is used for
trigonometric (inhomogeneous) quantities.

Values never cross backends implicitly: inputs are brought in with
``convert``, which accepts integers, fractions and decimal strings but no
binary floats.

Examples:
    >>> from dwbc.backend import get_backend
    >>> exact = get_backend("rational")
    >>> exact.format(exact.convert("3/6"))
    '1/2'
    >>> fb = get_backend("float", digits=50)
    >>> fb.is_close(fb.sin(fb.pi() / 6), fb.convert("1/2"))
    True
"""

import math
from abc import ABC, abstractmethod
from contextlib import AbstractContextManager, nullcontext
from fractions import Fraction
from functools import lru_cache
from typing import Any

import mpmath
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import BackendError, InvalidQueryError

DEFAULT_DIGITS = 50
MIN_FLOAT_DIGITS = 30


class ScalarBackend(ABC):
    """Arithmetic context for one kind of scalar.

    Attributes:
        name: Backend identifier used in records ("rational" or "float").
    """

    name: str = "abstract"

    @abstractmethod
    def convert(self, value: Any) -> Any:
        """Bring an int, Fraction or decimal string into this backend."""

    @abstractmethod
    def sin(self, x: Any) -> Any:
        """Sine of a backend scalar."""

    @abstractmethod
    def cos(self, x: Any) -> Any:
        """Cosine of a backend scalar."""

    @abstractmethod
    def pi(self) -> Any:
        """The constant pi."""

    @abstractmethod
    def is_close(self, x: Any, y: Any) -> bool:
        """Equality under this backend's tolerance."""

    @abstractmethod
    def format(self, x: Any) -> str:
        """Lossless (rational) or full-precision (float) string form."""

    @abstractmethod
    def det(self, rows: list[list[Any]]) -> Any:
        """Determinant of a non-empty square matrix of backend scalars."""

    @property
    def zero(self) -> Any:
        return self.convert(0)

    @property
    def one(self) -> Any:
        return self.convert(1)

    def is_zero(self, x: Any) -> bool:
        return self.is_close(x, self.zero)

    def factorial(self, n: int) -> Any:
        return self.convert(math.factorial(n))

    def lost_digits(self, x: Any) -> int:
        """Decimal digits by which a nonzero |x| lies below 1; 0 for exact backends."""
        return 0

    def extra_precision(self, digits: int) -> AbstractContextManager[Any]:
        """Context raising the working precision by the given digits."""
        return nullcontext()

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class RationalBackend(ScalarBackend):
    """Exact arithmetic over ``fractions.Fraction``.

    Trigonometric functions are only defined at zero; anything else raises
    BackendError because the value is irrational.
    """

    name = "rational"

    def convert(self, value: Any) -> Fraction:
        if isinstance(value, bool):
            raise BackendError(f"Cannot convert boolean {value!r} to a rational")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as e:
                raise BackendError(f"Not a rational literal: {value!r}") from e
        if hasattr(value, "numerator") and hasattr(value, "denominator"):
            # sympy QQ elements
            return Fraction(int(value.numerator), int(value.denominator))
        raise BackendError(f"Rational backend cannot take {type(value).__name__} value {value!r}")

    def sin(self, x: Any) -> Fraction:
        if self.convert(x) != 0:
            raise BackendError(f"sin({x}) is not rational")
        return Fraction(0)

    def cos(self, x: Any) -> Fraction:
        if self.convert(x) != 0:
            raise BackendError(f"cos({x}) is not rational")
        return Fraction(1)

    def pi(self) -> Fraction:
        raise BackendError("pi is not rational")

    def is_close(self, x: Any, y: Any) -> bool:
        return self.convert(x) == self.convert(y)

    def format(self, x: Any) -> str:
        return str(self.convert(x))

    def det(self, rows: list[list[Any]]) -> Fraction:
        n = len(rows)
        matrix = DomainMatrix(
            [[QQ(v.numerator, v.denominator) for v in map(self.convert, row)] for row in rows],
            (n, n),
            QQ,
        )
        return self.convert(matrix.det())

    def __hash__(self) -> int:
        return hash(self.name)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalBackend)


class FloatBackend(ScalarBackend):
    """High-precision floating arithmetic on a private mpmath context.

    Equality holds when values agree to half the working digits, e.g. a
    relative error of 1e-25 at 50 digits.

    Attributes:
        digits: Decimal digits carried by every operation.
        ctx: The mpmath context owning the precision.
    """

    name = "float"

    def __init__(self, digits: int = DEFAULT_DIGITS):
        if digits < MIN_FLOAT_DIGITS:
            raise InvalidQueryError(
                f"Float backend needs at least {MIN_FLOAT_DIGITS} digits, got {digits}"
            )
        self.digits = digits
        self.ctx = mpmath.MPContext()
        self.ctx.dps = digits
        self.rel_tol = self.ctx.mpf(10) ** (-(digits // 2))
        self.abs_tol = self.ctx.mpf(10) ** (-(digits - 10))

    def convert(self, value: Any) -> Any:
        ctx = self.ctx
        if isinstance(value, bool):
            raise BackendError(f"Cannot convert boolean {value!r} to a float scalar")
        if isinstance(value, float):
            raise BackendError(f"Binary float {value!r} refused; pass a decimal string")
        if isinstance(value, int):
            return ctx.mpf(value)
        if isinstance(value, Fraction):
            return ctx.mpf(value.numerator) / ctx.mpf(value.denominator)
        if isinstance(value, str):
            text = value.strip()
            if "/" in text:
                return self.convert(Fraction(text))
            try:
                return ctx.mpf(text)
            except ValueError as e:
                raise BackendError(f"Not a decimal literal: {value!r}") from e
        if hasattr(value, "_mpf_"):
            return ctx.mpf(value)
        if hasattr(value, "numerator") and hasattr(value, "denominator"):
            return ctx.mpf(int(value.numerator)) / ctx.mpf(int(value.denominator))
        raise BackendError(f"Float backend cannot take {type(value).__name__} value {value!r}")

    def sin(self, x: Any) -> Any:
        return self.ctx.sin(self.convert(x))

    def cos(self, x: Any) -> Any:
        return self.ctx.cos(self.convert(x))

    def pi(self) -> Any:
        return +self.ctx.pi

    def is_close(self, x: Any, y: Any) -> bool:
        return bool(
            self.ctx.almosteq(
                self.convert(x), self.convert(y), rel_eps=self.rel_tol, abs_eps=self.abs_tol
            )
        )

    def format(self, x: Any) -> str:
        return self.ctx.nstr(self.convert(x), self.digits)

    def lost_digits(self, x: Any) -> int:
        magnitude = abs(self.convert(x))
        if not magnitude or magnitude >= 1:
            return 0
        return int(self.ctx.ceil(-self.ctx.log10(magnitude)))

    def extra_precision(self, digits: int) -> AbstractContextManager[Any]:
        return self.ctx.extradps(max(0, digits))

    def det(self, rows: list[list[Any]]) -> Any:
        matrix = self.ctx.matrix([[self.convert(v) for v in row] for row in rows])
        return self.ctx.det(matrix)

    def __hash__(self) -> int:
        return hash((self.name, self.digits))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FloatBackend) and other.digits == self.digits

    def __repr__(self) -> str:
        return f"FloatBackend(digits={self.digits})"


RATIONAL = RationalBackend()


@lru_cache(maxsize=None)
def get_backend(name: str, digits: int = DEFAULT_DIGITS) -> ScalarBackend:
    """Return the shared backend instance for a name.

    Args:
        name: "rational" or "float".
        digits: Decimal digits for the float backend (ignored otherwise).

    Returns:
        Cached backend instance.

    Raises:
        InvalidQueryError: If the name is unknown or digits are too few.
    """
    if name == "rational":
        return RATIONAL
    if name == "float":
        return FloatBackend(digits)
    raise InvalidQueryError(f"Unknown backend: {name!r} (expected 'rational' or 'float')")


__all__ = [
    "DEFAULT_DIGITS",
    "MIN_FLOAT_DIGITS",
    "ScalarBackend",
    "RationalBackend",
    "FloatBackend",
    "RATIONAL",
    "get_backend",
]
