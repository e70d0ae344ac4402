"""Residue extraction for rational integrands.

A multiple contour integral over small circles around one point per variable
is computed as an iterated residue. For one variable x at point p the
integrand is shifted so the pole sits at 0, every denominator factor that
involves x is split as x**v * F(x) with F(0) != 0, and the coefficient of
x**(m-1) is read off, m being the total pole order. The inverse series of
each F is built without dividing by F(0) (see ``Jet.scaled_reciprocal``), so
the result stays a polynomial over a factored denominator in the remaining
variables.

Examples:
    >>> R = poly_ring(("w",))
    >>> w = R.gens[0]
    >>> iterated_residue(RationalFn(w**2, {w - 1: 2}), ["w"], [1])
    Fraction(2, 1)
"""

import logging
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from sympy.polys.rings import PolyElement

from .errors import InvalidQueryError, ResidueError
from .jet import Jet
from .polynomial import RationalFn, from_qq, gen, gen_index, to_qq

logger = logging.getLogger(__name__)


def _valuation(p: PolyElement, index: int) -> int:
    return min(monom[index] for monom in p.monoms())


def _divide_power(p: PolyElement, index: int, power: int) -> PolyElement:
    if power == 0:
        return p
    terms = {}
    for monom, coeff in p.terms():
        lowered = list(monom)
        lowered[index] -= power
        terms[tuple(lowered)] = coeff
    return p.ring.from_dict(terms)


def _series(p: PolyElement, index: int, order: int) -> Jet:
    # coefficients of x**0..x**order, each a polynomial free of x
    buckets: list[dict] = [{} for _ in range(order + 1)]
    for monom, coeff in p.terms():
        power = monom[index]
        if power <= order:
            lowered = list(monom)
            lowered[index] = 0
            buckets[power][tuple(lowered)] = coeff
    return Jet(tuple(p.ring.from_dict(bucket) for bucket in buckets), str(p.ring.symbols[index]))


def residue_in(f: RationalFn, name: str, point: Any = 0) -> RationalFn:
    """Residue of f in one variable about a rational point.

    Args:
        f: Integrand; its factors not vanishing at the point are treated as
            invertible power series.
        name: Variable to integrate out.
        point: Center of the small contour.

    Returns:
        Rational function in the remaining variables (same ring, variable absent).
    """
    R = f.ring
    x = gen(R, name)
    index = gen_index(R, name)
    point = Fraction(point)

    numerator = f.numerator
    factors = dict(f.factors)
    if point != 0:
        shifted = x + to_qq(point)
        numerator = numerator.compose(x, shifted)
        factors = {factor.compose(x, shifted): e for factor, e in factors.items()}

    pole_order = 0
    involved: list[tuple[PolyElement, int]] = []
    untouched: dict[PolyElement, int] = {}
    for factor, exponent in factors.items():
        if factor.degree(x) <= 0:
            untouched[factor] = untouched.get(factor, 0) + exponent
            continue
        v = _valuation(factor, index)
        pole_order += v * exponent
        involved.append((_divide_power(factor, index, v), exponent))

    if pole_order <= 0:
        return RationalFn(R.zero)

    order = pole_order - 1
    series = _series(numerator, index, order)
    new_factors = dict(untouched)
    for regular, exponent in involved:
        if regular.is_ground:
            series = series * (regular.ring.one.quo_ground(regular.LC ** exponent))
            continue
        expansion = _series(regular, index, order)
        leading = expansion[0]
        if leading.is_zero:
            raise ResidueError(f"Factor {regular} vanishes identically at {name}={point}")
        series = series * (expansion.scaled_reciprocal() ** exponent)
        new_factors[leading] = new_factors.get(leading, 0) + exponent * (order + 1)

    logger.debug("Residue in %s about %s: pole order %d", name, point, pole_order)
    return RationalFn(series[order], new_factors)


def iterated_residue(f: RationalFn | PolyElement, names: Sequence[str], points: Sequence[Any]) -> Fraction:
    """Iterated residue in the given variable order, returned as a number.

    Args:
        f: Integrand.
        names: Variables to integrate out, innermost first.
        points: Contour center per variable.

    Returns:
        Exact value of the multiple residue.

    Raises:
        InvalidQueryError: If names and points differ in length.
        ResidueError: If the integrand depends on variables not integrated out.

    Examples:
        >>> R = poly_ring(("z",))
        >>> z = R.gens[0]
        >>> iterated_residue(RationalFn(3*z**2 + 2*z + 7, {z: 3}), ["z"], [0])
        Fraction(3, 1)
    """
    if len(names) != len(points):
        raise InvalidQueryError(f"{len(names)} variables but {len(points)} points")
    current = f if isinstance(f, RationalFn) else RationalFn(f)
    for name, point in zip(names, points):
        current = residue_in(current, name, point)
        if current.is_zero:
            return Fraction(0)
    if current.factors or not current.numerator.is_ground:
        raise ResidueError(
            f"Integrand still depends on variables after integrating out {tuple(names)}"
        )
    return from_qq(current.numerator.LC)


__all__ = ["residue_in", "iterated_residue"]
