"""Lattice data for the six-vertex model with domain wall boundaries.

Conventions used throughout the package:

* vertical lines alpha = 1..N carry spectral parameters lambda_alpha and are
  counted from the right; horizontal lines k = 1..N carry nu_k and are
  counted from the top;
* with the trigonometric parametrization a = sin(lambda - nu + eta),
  b = sin(lambda - nu - eta), c = sin(2 eta);
* a homogeneous lattice uses one weight triple (a, b, c) for every vertex,
  which may be exact rationals.

Examples:
    >>> w = VertexWeights.ice_point()
    >>> w.delta
    Fraction(1, 2)
    >>> RowConfig(n=3, s=2, positions=(1, 3)).positions
    (1, 3)
"""

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, NamedTuple

from .backend import RATIONAL, ScalarBackend
from .errors import BackendError, InvalidQueryError, SingularParameterError
from .polynomial import constant


class WeightTriple(NamedTuple):
    """Weights (a, b, c) of one vertex."""

    a: Any
    b: Any
    c: Any


@dataclass(frozen=True)
class VertexWeights:
    """Homogeneous vertex weights with derived t and Delta.

    Attributes:
        a, b, c: The three weights.
        backend: Scalar backend the weights belong to.
        lam, eta: Angles when built with ``from_angles`` (None otherwise).
    """

    a: Any
    b: Any
    c: Any
    backend: ScalarBackend = RATIONAL
    lam: Any = None
    eta: Any = None

    @classmethod
    def rational(cls, a: Any, b: Any, c: Any) -> "VertexWeights":
        """Exact weights from ints, Fractions or "p/q" strings."""
        convert = RATIONAL.convert
        return cls(convert(a), convert(b), convert(c), RATIONAL)

    @classmethod
    def from_angles(cls, lam: Any, eta: Any, backend: ScalarBackend) -> "VertexWeights":
        """a = sin(lam + eta), b = sin(lam - eta), c = sin(2 eta)."""
        lam, eta = backend.convert(lam), backend.convert(eta)
        return cls(
            backend.sin(lam + eta),
            backend.sin(lam - eta),
            backend.sin(2 * eta),
            backend,
            lam,
            eta,
        )

    @classmethod
    def ice_point(cls) -> "VertexWeights":
        return cls.rational(1, 1, 1)

    @property
    def triple(self) -> WeightTriple:
        return WeightTriple(self.a, self.b, self.c)

    @property
    def t(self) -> Any:
        if self.backend.is_zero(self.a):
            raise SingularParameterError("t = b/a undefined for a = 0")
        return self.b / self.a

    @property
    def delta(self) -> Any:
        if self.backend.is_zero(self.a) or self.backend.is_zero(self.b):
            raise SingularParameterError("Delta undefined when a or b vanishes")
        return (self.a**2 + self.b**2 - self.c**2) / (2 * self.a * self.b)

    @property
    def kappa(self) -> Any:
        """t**2 - 2 Delta t, the slope in u(z)."""
        t = self.t
        return t * t - 2 * self.delta * t

    @property
    def is_exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in (self.a, self.b, self.c))

    @property
    def is_positive(self) -> bool:
        return all(x > 0 for x in (self.a, self.b, self.c))

    def require_exact(self) -> "VertexWeights":
        """Return self, or raise BackendError for non-rational weights."""
        if not self.is_exact:
            raise BackendError("This route needs exact rational weights (a, b, c)")
        return self

    def require_nonzero(self) -> "VertexWeights":
        for name in ("a", "b", "c"):
            if self.backend.is_zero(getattr(self, name)):
                raise SingularParameterError(f"Weight {name} vanishes")
        return self

    def describe(self) -> dict[str, str]:
        """String form for records and logs."""
        data = {name: self.backend.format(getattr(self, name)) for name in ("a", "b", "c")}
        if self.lam is not None:
            data["lambda"] = self.backend.format(self.lam)
            data["eta"] = self.backend.format(self.eta)
        return data


@dataclass(frozen=True)
class SpectralParams:
    """Inhomogeneity data (lambda_1..lambda_N; nu_1..nu_N; eta).

    Raises:
        InvalidQueryError: If the lists differ in length.
        SingularParameterError: If lambdas or nus repeat.
    """

    lambdas: tuple[Any, ...]
    nus: tuple[Any, ...]
    eta: Any

    def __post_init__(self):
        if len(self.lambdas) != len(self.nus):
            raise InvalidQueryError(
                f"{len(self.lambdas)} lambdas but {len(self.nus)} nus; the lattice is square"
            )
        if len(set(self.lambdas)) != len(self.lambdas):
            raise SingularParameterError(f"Coincident lambda values: {self.lambdas}")
        if len(set(self.nus)) != len(self.nus):
            raise SingularParameterError(f"Coincident nu values: {self.nus}")

    @classmethod
    def parse(
        cls, lambdas: Sequence[Any], nus: Sequence[Any], eta: Any, backend: ScalarBackend
    ) -> "SpectralParams":
        convert = backend.convert
        return cls(tuple(map(convert, lambdas)), tuple(map(convert, nus)), convert(eta))

    @property
    def size(self) -> int:
        return len(self.lambdas)

    def restrict(self, alphas: Sequence[int], ks: Sequence[int]) -> "SpectralParams":
        """Sub-lattice on the given 1-based line indices."""
        return SpectralParams(
            tuple(self.lambdas[alpha - 1] for alpha in alphas),
            tuple(self.nus[k - 1] for k in ks),
            self.eta,
        )


@dataclass(frozen=True)
class Lattice:
    """Weights of every vertex of a (possibly rectangular) lattice.

    Either ``weights`` is set (homogeneous, any backend) or the vertex weights
    follow from angles lambdas/nus/eta (float backend).

    Attributes:
        lambdas: One entry per vertical line (placeholders when homogeneous).
        nus: One entry per horizontal line (placeholders when homogeneous).
        backend: Scalar backend.
        eta: Crossing parameter for the angle form.
        weights: Uniform weights for the homogeneous form.
    """

    lambdas: tuple[Any, ...]
    nus: tuple[Any, ...]
    backend: ScalarBackend = RATIONAL
    eta: Any = None
    weights: VertexWeights | None = field(default=None)

    def __post_init__(self):
        if self.weights is None and self.eta is None:
            raise InvalidQueryError("Lattice needs uniform weights or an eta")

    @classmethod
    def homogeneous(cls, weights: VertexWeights, n: int, rows: int | None = None) -> "Lattice":
        zero = weights.backend.zero
        rows = n if rows is None else rows
        return cls((zero,) * n, (zero,) * rows, weights.backend, None, weights)

    @classmethod
    def from_params(cls, params: SpectralParams, backend: ScalarBackend) -> "Lattice":
        return cls(params.lambdas, params.nus, backend, params.eta, None)

    @property
    def size(self) -> int:
        if len(self.lambdas) != len(self.nus):
            raise InvalidQueryError(
                f"Lattice is {len(self.nus)}x{len(self.lambdas)}, not square"
            )
        return len(self.lambdas)

    @property
    def is_homogeneous(self) -> bool:
        return self.weights is not None

    @property
    def c(self) -> Any:
        if self.weights is not None:
            return self.weights.c
        return self.backend.sin(2 * self.eta)

    def weight(self, lam: Any, nu: Any) -> WeightTriple:
        """Weights of the vertex where a lambda line crosses a nu line."""
        if self.weights is not None:
            return self.weights.triple
        sin = self.backend.sin
        return WeightTriple(sin(lam - nu + self.eta), sin(lam - nu - self.eta), sin(2 * self.eta))

    def vertex(self, alpha: int, k: int) -> WeightTriple:
        """Weights at vertical line alpha, horizontal line k (1-based)."""
        return self.weight(self.lambdas[alpha - 1], self.nus[k - 1])

    def restrict(self, alphas: Sequence[int], ks: Sequence[int]) -> "Lattice":
        """Sub-lattice on the given 1-based line indices."""
        return Lattice(
            tuple(self.lambdas[alpha - 1] for alpha in alphas),
            tuple(self.nus[k - 1] for k in ks),
            self.backend,
            self.eta,
            self.weights,
        )

    def permuted(self, lambda_order: Sequence[int], nu_order: Sequence[int]) -> "Lattice":
        """Same lattice with lambdas and nus reordered by 0-based index lists."""
        return Lattice(
            tuple(self.lambdas[i] for i in lambda_order),
            tuple(self.nus[i] for i in nu_order),
            self.backend,
            self.eta,
            self.weights,
        )


@dataclass(frozen=True)
class RowConfig:
    """Positions r_1 < ... < r_s of the up arrows below row s.

    Attributes:
        n: Lattice size N.
        s: Row index (0 and N allowed as boundary rows).
        positions: Strictly increasing positions in 1..N, counted from the right.

    Raises:
        InvalidQueryError: On any range or ordering violation.
    """

    n: int
    s: int
    positions: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(self.positions))
        if self.n < 1:
            raise InvalidQueryError(f"N must be >= 1, got {self.n}")
        if not 0 <= self.s <= self.n:
            raise InvalidQueryError(f"s={self.s} outside 0..{self.n}")
        if len(self.positions) != self.s:
            raise InvalidQueryError(f"Expected {self.s} positions, got {len(self.positions)}")
        for r in self.positions:
            if not 1 <= r <= self.n:
                raise InvalidQueryError(f"Position r={r} outside 1..{self.n}")
        if any(x >= y for x, y in zip(self.positions, self.positions[1:])):
            raise InvalidQueryError(f"Positions must increase strictly: {self.positions}")

    @classmethod
    def all_configs(cls, n: int, s: int) -> Iterator["RowConfig"]:
        """Every configuration of row s, in lexicographic order."""
        for positions in itertools.combinations(range(1, n + 1), s):
            yield cls(n, s, positions)

    @property
    def mask(self) -> int:
        """Bitmask with bit r-1 set for each position r."""
        return sum(1 << (r - 1) for r in self.positions)

    def __str__(self) -> str:
        return f"N={self.n} s={self.s} r={list(self.positions)}"


@dataclass(frozen=True)
class BoundaryGenerating:
    """Generating polynomial h_N(z) = sum_r H_N^(r) z**(r-1).

    Attributes:
        n: Lattice size.
        coefficients: H_N^(1)..H_N^(N).
    """

    n: int
    coefficients: tuple[Any, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.n:
            raise InvalidQueryError(
                f"h_{self.n} needs {self.n} coefficients, got {len(self.coefficients)}"
            )

    @property
    def degree(self) -> int:
        return self.n - 1

    @property
    def total(self) -> Any:
        return sum(self.coefficients[1:], self.coefficients[0])

    def evaluate(self, z: Any) -> Any:
        result = self.coefficients[-1]
        for coefficient in reversed(self.coefficients[:-1]):
            result = result * z + coefficient
        return result

    def as_poly(self, x: Any) -> Any:
        """h_N as a polynomial in generator x (rational coefficients)."""
        R = x.ring
        result = R.zero
        for power, coefficient in enumerate(self.coefficients):
            result += constant(R, coefficient) * x**power
        return result


__all__ = [
    "WeightTriple",
    "VertexWeights",
    "SpectralParams",
    "Lattice",
    "RowConfig",
    "BoundaryGenerating",
]
