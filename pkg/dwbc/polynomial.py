"""Exact multivariate polynomials and rational functions.

Polynomials are sympy sparse ``PolyElement`` objects over ``QQ`` living in
rings created by ``poly_ring``; rings are cached per variable tuple so that
integrands built in different modules can be combined.

``RationalFn`` keeps its denominator factored: a dict from monic,
non-constant polynomials to positive exponents. Constant factors are folded
into the numerator on construction. Keeping the factors lets the residue
module find every pole of a variable and lets sums use the least common
multiple of the factor sets instead of multiplying denominators out.

Examples:
    >>> R = poly_ring(("z1", "z2"))
    >>> z1, z2 = R.gens
    >>> vandermonde_quotient(z2**2 - z1**2, ("z1", "z2")) == z1 + z2
    True
    >>> f = antisymmetrize(RationalFn(z1), ("z1", "z2"))
    >>> f.numerator == (z1 - z2) / 2
    True
"""

import itertools
import math
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from functools import lru_cache
from typing import Any, Union

from sympy import QQ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing, ring

from .errors import BoundExceededError, InvalidQueryError, NotDivisibleError, SingularParameterError

DEFAULT_FACTORIAL_BUDGET = 8


@lru_cache(maxsize=None)
def poly_ring(names: tuple[str, ...]) -> PolyRing:
    """Return the polynomial ring QQ[names] (cached).

    Args:
        names: Ordered variable names, e.g. ("z1", "z2").

    Raises:
        InvalidQueryError: If no names or repeated names are given.
    """
    if not names:
        raise InvalidQueryError("A polynomial ring needs at least one variable")
    if len(set(names)) != len(names):
        raise InvalidQueryError(f"Repeated variable names: {names}")
    result = ring(",".join(names), QQ)
    return result[0]


def variable_names(count: int, prefix: str) -> tuple[str, ...]:
    """Names prefix1..prefixN."""
    return tuple(f"{prefix}{j}" for j in range(1, count + 1))


def to_qq(value: Any) -> Any:
    """Convert an int or Fraction to a QQ domain element."""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value: Any) -> Fraction:
    """Convert a QQ domain element to a Fraction."""
    return Fraction(int(value.numerator), int(value.denominator))


def constant(R: PolyRing, value: Any) -> PolyElement:
    """Ground element of ring R with the given rational value."""
    return R.ground_new(to_qq(value))


def gen(R: PolyRing, name: str) -> PolyElement:
    """Generator of R with the given name.

    Raises:
        InvalidQueryError: If the name is not a variable of R.
    """
    index = gen_index(R, name)
    return R.gens[index]


def gen_index(R: PolyRing, name: str) -> int:
    names = [str(symbol) for symbol in R.symbols]
    if name not in names:
        raise InvalidQueryError(f"Variable {name!r} not in ring {tuple(names)}")
    return names.index(name)


def evaluate(p: PolyElement, point: Mapping[str, Any]) -> Fraction:
    """Evaluate a polynomial at a rational point.

    Args:
        p: Polynomial.
        point: Value for every variable of p's ring, by name.

    Returns:
        Exact value.

    Raises:
        InvalidQueryError: If a variable has no value.
    """
    names = [str(symbol) for symbol in p.ring.symbols]
    missing = [name for name in names if name not in point]
    if missing:
        raise InvalidQueryError(f"No value for variables {missing}")
    pairs = [(x, to_qq(point[name])) for x, name in zip(p.ring.gens, names)]
    return from_qq(p.evaluate(pairs))


def permute_variables(p: PolyElement, mapping: Mapping[int, int]) -> PolyElement:
    """Rename variables by index: variable i becomes variable mapping[i].

    Indices absent from the mapping stay put. The mapping must be a bijection
    on its keys.
    """
    if not mapping:
        return p
    size = p.ring.ngens
    target = list(range(size))
    for source, dest in mapping.items():
        target[source] = dest
    terms: dict[tuple[int, ...], Any] = {}
    for monom, coeff in p.terms():
        new = [0] * size
        for index, exponent in enumerate(monom):
            new[target[index]] = exponent
        terms[tuple(new)] = coeff
    return p.ring.from_dict(terms)


def vandermonde(R: PolyRing, names: Sequence[str]) -> PolyElement:
    """The product of (z_k - z_j) over j < k in the given variable order."""
    gens = [gen(R, name) for name in names]
    result = R.one
    for j, k in itertools.combinations(range(len(gens)), 2):
        result *= gens[k] - gens[j]
    return result


def vandermonde_quotient(p: PolyElement, names: Sequence[str]) -> PolyElement:
    """Exact quotient of an antisymmetric polynomial by the Vandermonde.

    Args:
        p: Polynomial antisymmetric in the named variables.
        names: Variables z_1..z_s, defining the Vandermonde prod_{j<k}(z_k - z_j).

    Returns:
        The polynomial q with q * prod_{j<k}(z_k - z_j) == p.

    Raises:
        NotDivisibleError: If the division leaves a remainder.
    """
    denominator = vandermonde(p.ring, names)
    try:
        return p.exquo(denominator)
    except ExactQuotientFailed as e:
        raise NotDivisibleError(
            f"Polynomial is not divisible by the Vandermonde in {tuple(names)}"
        ) from e


PolyLike = Union["RationalFn", PolyElement, Fraction, int]


class RationalFn:
    """Quotient of a polynomial by a product of polynomial factors.

    Attributes:
        numerator: Polynomial numerator (carries every constant).
        factors: Mapping from monic non-constant polynomials to exponents.

    Examples:
        >>> R = poly_ring(("w",))
        >>> w = R.gens[0]
        >>> f = RationalFn(w**2, {w - 1: 2})
        >>> f.evaluate({"w": 3})
        Fraction(9, 4)
    """

    __slots__ = ("numerator", "factors")

    def __init__(self, numerator: PolyElement, factors: Mapping[PolyElement, int] | None = None):
        R = numerator.ring
        merged: dict[PolyElement, int] = {}
        for factor, exponent in (factors or {}).items():
            if factor.ring != R:
                raise InvalidQueryError("Denominator factor lives in a different ring")
            if exponent < 0:
                raise InvalidQueryError(f"Negative factor exponent {exponent}")
            if exponent == 0:
                continue
            if factor.is_zero:
                raise SingularParameterError("Zero polynomial in a denominator")
            lead = factor.LC
            numerator = numerator.quo_ground(lead**exponent)
            if factor.is_ground:
                continue
            monic = factor.quo_ground(lead)
            merged[monic] = merged.get(monic, 0) + exponent
        self.numerator = numerator
        self.factors = merged

    @classmethod
    def from_value(cls, R: PolyRing, value: PolyLike) -> "RationalFn":
        if isinstance(value, RationalFn):
            return value
        if isinstance(value, PolyElement):
            return cls(value)
        return cls(constant(R, value))

    @property
    def ring(self) -> PolyRing:
        return self.numerator.ring

    @property
    def denominator(self) -> PolyElement:
        result = self.ring.one
        for factor, exponent in self.factors.items():
            result *= factor**exponent
        return result

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def _coerce(self, other: PolyLike) -> "RationalFn":
        return RationalFn.from_value(self.ring, other)

    def __mul__(self, other: PolyLike) -> "RationalFn":
        other = self._coerce(other)
        factors = dict(self.factors)
        for factor, exponent in other.factors.items():
            factors[factor] = factors.get(factor, 0) + exponent
        return RationalFn(self.numerator * other.numerator, factors)

    __rmul__ = __mul__

    def __truediv__(self, other: PolyLike) -> "RationalFn":
        other = self._coerce(other)
        if other.is_zero:
            raise SingularParameterError("Division by the zero rational function")
        factors = dict(self.factors)
        factors[other.numerator] = factors.get(other.numerator, 0) + 1
        numerator = self.numerator
        for factor, exponent in other.factors.items():
            numerator *= factor**exponent
        return RationalFn(numerator, factors)

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.numerator, self.factors)

    def __add__(self, other: PolyLike) -> "RationalFn":
        other = self._coerce(other)
        common = dict(self.factors)
        for factor, exponent in other.factors.items():
            common[factor] = max(common.get(factor, 0), exponent)
        return RationalFn(self._lift(common) + other._lift(common), common)

    __radd__ = __add__

    def __sub__(self, other: PolyLike) -> "RationalFn":
        return self + (-self._coerce(other))

    def __rsub__(self, other: PolyLike) -> "RationalFn":
        return self._coerce(other) - self

    def __pow__(self, exponent: int) -> "RationalFn":
        if exponent < 0:
            raise InvalidQueryError("Negative powers of a RationalFn are not supported")
        return RationalFn(
            self.numerator**exponent,
            {factor: e * exponent for factor, e in self.factors.items()},
        )

    def _lift(self, common: Mapping[PolyElement, int]) -> PolyElement:
        # numerator over the common denominator
        result = self.numerator
        for factor, exponent in common.items():
            extra = exponent - self.factors.get(factor, 0)
            if extra:
                result *= factor**extra
        return result

    def permuted(self, mapping: Mapping[int, int]) -> "RationalFn":
        """Rename variables by index in numerator and every factor."""
        factors: dict[PolyElement, int] = {}
        for factor, exponent in self.factors.items():
            moved = permute_variables(factor, mapping)
            factors[moved] = factors.get(moved, 0) + exponent
        return RationalFn(permute_variables(self.numerator, mapping), factors)

    def evaluate(self, point: Mapping[str, Any]) -> Fraction:
        """Evaluate at a rational point.

        Raises:
            SingularParameterError: If a denominator factor vanishes there.
        """
        value = evaluate(self.numerator, point)
        for factor, exponent in self.factors.items():
            denominator = evaluate(factor, point)
            if denominator == 0:
                raise SingularParameterError(f"Denominator factor {factor} vanishes at {dict(point)}")
            value /= denominator**exponent
        return value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (RationalFn, PolyElement, Fraction, int)):
            return NotImplemented
        difference = self - other
        return difference.is_zero

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self.factors:
            return f"RationalFn({self.numerator})"
        denominator = " * ".join(f"({f})**{e}" for f, e in self.factors.items())
        return f"RationalFn(({self.numerator}) / ({denominator}))"


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of 0..n-1."""
    inversions = sum(
        1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def signed_permutations(size: int) -> Iterable[tuple[int, tuple[int, ...]]]:
    """Yield (sign, permutation) for every permutation of 0..size-1."""
    for perm in itertools.permutations(range(size)):
        yield permutation_sign(perm), perm


def antisymmetrize(
    f: RationalFn | PolyElement,
    names: Sequence[str],
    max_size: int = DEFAULT_FACTORIAL_BUDGET,
) -> RationalFn:
    """Signed average of f over all permutations of the named variables.

    Args:
        f: Rational function (or polynomial).
        names: Distinct variables of f's ring to permute.
        max_size: Largest number of variables allowed (s! terms are summed).

    Returns:
        (1/s!) sum_P sign(P) f(permuted variables).

    Raises:
        BoundExceededError: If len(names) exceeds max_size.
        InvalidQueryError: If a name is repeated or not a ring variable.
    """
    f = f if isinstance(f, RationalFn) else RationalFn(f)
    size = len(names)
    if size > max_size:
        raise BoundExceededError(
            f"Antisymmetrization over {size} variables exceeds factorial budget {max_size}"
        )
    if len(set(names)) != size:
        raise InvalidQueryError(f"Repeated variables in {tuple(names)}")
    indices = [gen_index(f.ring, name) for name in names]

    # collect the common denominator once, then add numerators
    terms: list[tuple[int, RationalFn]] = []
    common: dict[PolyElement, int] = {}
    for sign, perm in signed_permutations(size):
        mapping = {indices[i]: indices[perm[i]] for i in range(size)}
        term = f.permuted(mapping)
        terms.append((sign, term))
        for factor, exponent in term.factors.items():
            common[factor] = max(common.get(factor, 0), exponent)

    numerator = f.ring.zero
    for sign, term in terms:
        lifted = term._lift(common)
        numerator = numerator + lifted if sign > 0 else numerator - lifted
    numerator = numerator.quo_ground(to_qq(math.factorial(size)))
    return RationalFn(numerator, common)


__all__ = [
    "DEFAULT_FACTORIAL_BUDGET",
    "poly_ring",
    "variable_names",
    "to_qq",
    "from_qq",
    "constant",
    "gen",
    "gen_index",
    "evaluate",
    "permute_variables",
    "vandermonde",
    "vandermonde_quotient",
    "RationalFn",
    "permutation_sign",
    "signed_permutations",
    "antisymmetrize",
]
