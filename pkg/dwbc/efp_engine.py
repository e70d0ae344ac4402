"""Emptiness formation probability by several independent routes.

F_N^(r,s) is the probability that the arrows below row s are all down to
the left of vertical line r. Besides the oracle sum it is computed from

* the sum of formula row probabilities over r_1 < ... < r_s <= r;
* two s-fold residue representations at z_j = 0 built on h_{N,s};
* the double representation in which the w-integration has been done
  analytically, leaving Phi_s(1, ..., 1; z) inside a residue at z_j = 0.

Phi_s(1, ..., 1; z) is a coinciding-point limit. It is obtained from jets:
with w_j = 1 + c_j eps the antisymmetrized bracket vanishes to order
s(s-1)/2 in eps, and the coefficient of that power divided by
prod_{j<k}(c_k - c_j) is the limit.

Examples:
    >>> q = EfpQuery(3, 2, 2, VertexWeights.ice_point())
    >>> efp_rep1(q) == efp_double(q)
    True
"""

import functools
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from sympy.polys.rings import PolyElement

from .errors import BoundExceededError, InvalidQueryError, SingularParameterError
from .jet import Jet
from .model import Lattice, RowConfig, VertexWeights
from .oracle import efp_oracle
from .polynomial import (
    DEFAULT_FACTORIAL_BUDGET,
    RationalFn,
    constant,
    poly_ring,
    signed_permutations,
    to_qq,
    variable_names,
)
from .residue import iterated_residue
from .row_engine import h_multi_build, homogeneous_partition, pair_kernel, row_prob_formula

logger = logging.getLogger(__name__)

ROUTES = ("oracle", "row-sum", "rep1", "rep2", "double")


@dataclass(frozen=True)
class EfpQuery:
    """One emptiness formation probability F_N^(r,s).

    Raises:
        InvalidQueryError: If r or s is outside 1..N.
    """

    n: int
    r: int
    s: int
    weights: VertexWeights

    def __post_init__(self):
        if self.n < 1:
            raise InvalidQueryError(f"N must be >= 1, got {self.n}")
        if not 1 <= self.r <= self.n:
            raise InvalidQueryError(f"r={self.r} outside 1..{self.n}")
        if not 1 <= self.s <= self.n:
            raise InvalidQueryError(f"s={self.s} outside 1..{self.n}")

    def __str__(self) -> str:
        return f"N={self.n} r={self.r} s={self.s}"


def u_of_z(z: Any, t: Any, delta: Any) -> Any:
    """u(z) = -(z - 1) / ((t**2 - 2 Delta t) z + 1).

    Raises:
        SingularParameterError: If the denominator vanishes.

    Examples:
        >>> u_of_z(Fraction(2), Fraction(1), Fraction(1, 2))
        Fraction(-1, 1)
    """
    kappa = t * t - 2 * delta * t
    denominator = kappa * z + 1
    if denominator == 0:
        raise SingularParameterError(f"u(z) has a pole at z = {z}")
    return -(z - 1) / denominator


def _setup(q: EfpQuery) -> tuple[Any, ...]:
    weights = q.weights.require_exact()
    h = h_multi_build(q.n, q.s, weights)
    R = h.poly.ring
    tc, dc = constant(R, weights.t), constant(R, weights.delta)
    kappa = constant(R, weights.kappa)
    return h, R, R.gens, tc, dc, kappa


def efp_rep1(q: EfpQuery) -> Fraction:
    """First residue representation.

    (-1)**s times the residue at z_j = 0 of
    prod_j (kappa z_j + 1)**(s-j) / (z_j**r (z_j - 1)**(s-j+1))
    prod_{j<k} (z_j - z_k) / kernel(z_j, z_k) h_{N,s}(z).
    """
    h, R, z, tc, dc, kappa = _setup(q)
    s = q.s
    numerator = h.poly
    factors: dict[PolyElement, int] = {}
    for j in range(s):
        numerator *= (kappa * z[j] + 1) ** (s - 1 - j)
        factors[z[j]] = q.r
        factors[z[j] - 1] = s - j
    for j, k in itertools.combinations(range(s), 2):
        numerator *= z[j] - z[k]
        kernel = pair_kernel(z[j], z[k], tc, dc)
        factors[kernel] = factors.get(kernel, 0) + 1
    value = iterated_residue(RationalFn(numerator, factors), h.names, [0] * s)
    return -value if s % 2 else value


def compose_with_u(poly: PolyElement, kappa: PolyElement) -> RationalFn:
    """p(u(z_1), ..., u(z_s)) for a polynomial p in the ring's variables."""
    R = poly.ring
    z = R.gens
    degrees = [max((monom[j] for monom in poly.monoms()), default=0) for j in range(R.ngens)]
    numerator = R.zero
    for monom, coeff in poly.terms():
        term = R.ground_new(coeff)
        for j, e in enumerate(monom):
            term *= (1 - z[j]) ** e * (kappa * z[j] + 1) ** (degrees[j] - e)
        numerator += term
    return RationalFn(numerator, {kappa * z[j] + 1: degrees[j] for j in range(R.ngens)})


def efp_rep2(q: EfpQuery, z_s: Fraction | None = None) -> Fraction:
    """Second residue representation, symmetrized with h_{s,s}(u(z)).

    (-1)**s Z_s / (s! a**(s(s-1)) c**s) times the residue at z_j = 0 of
    prod_j (kappa z_j + 1)**(s-1) / (z_j**r (z_j - 1)**s)
    prod_{j != k} (z_k - z_j) / kernel(z_j, z_k) h_{N,s}(z) h_{s,s}(u(z)).
    """
    h, R, z, tc, dc, kappa = _setup(q)
    s = q.s
    weights = q.weights
    if z_s is None:
        z_s = homogeneous_partition(s, weights)
    h_square = h_multi_build(s, s, weights)

    integrand = compose_with_u(h_square.poly, kappa)
    numerator = h.poly
    factors: dict[PolyElement, int] = {}
    for j in range(s):
        numerator *= (kappa * z[j] + 1) ** (s - 1)
        factors[z[j]] = q.r
        factors[z[j] - 1] = s
    for j, k in itertools.permutations(range(s), 2):
        numerator *= z[k] - z[j]
        kernel = pair_kernel(z[j], z[k], tc, dc)
        factors[kernel] = factors.get(kernel, 0) + 1
    integrand = integrand * RationalFn(numerator, factors)
    value = iterated_residue(integrand, h.names, [0] * s)

    prefactor = z_s / (math.factorial(s) * weights.a ** (s * (s - 1)) * weights.c**s)
    value = prefactor * value
    return -value if s % 2 else value


def _default_spread(s: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(j) for j in range(1, s + 1))


def _linear_jet(slope: Any, order: int, one: Any, zero: Any) -> Jet:
    if order == 0:
        return Jet((one,), "eps")
    return Jet((one, slope) + (zero,) * (order - 1), "eps")


def _phi_bracket(
    s: int,
    partial: list[Any],
    t: Any,
    delta: Any,
    spread: tuple[Fraction, ...],
    lift: Any,
    symbolic: bool,
) -> Any:
    """Signed sum over P of the eps**K coefficient of the bracket at w = 1 + c eps."""
    order = s * (s - 1) // 2
    zero, one = lift(0), lift(1)
    total = zero
    for sign, perm in signed_permutations(s):
        w = [_linear_jet(lift(spread[perm[j]]), order, one, zero) for j in range(s)]
        jet = Jet.constant(one, order, zero, "eps")
        for j, k in itertools.combinations(range(s), 2):
            # jets on the left: sympy scalars must never see a Jet operand
            jet = jet * (w[j] * w[k] * (t * t) - w[j] * (2 * delta * t) + 1)
        running = Jet.constant(one, order, zero, "eps")
        for j in range(s):
            running = running * w[j]
            gap = running - partial[j]
            jet = jet * (gap.scaled_reciprocal() if symbolic else gap.reciprocal())
        total = total + jet[order] if sign > 0 else total - jet[order]
    return total


def phi_s_at_ones(
    s: int,
    t: Any,
    delta: Any,
    z: list[Any] | None = None,
    spread: tuple[Any, ...] | None = None,
    max_size: int = DEFAULT_FACTORIAL_BUDGET,
) -> Any:
    """Phi_s(1, ..., 1; z_1, ..., z_s) by the eps-jet limit.

    Args:
        s: Number of variables.
        t: The ratio b/a.
        delta: The anisotropy Delta.
        z: Rational values of z_1..z_s, or None for the symbolic function.
        spread: Distinct rational c_j in w_j = 1 + c_j eps (default 1..s).
        max_size: Largest s accepted (s! terms).

    Returns:
        A Fraction for numeric z, else a RationalFn in z1..zs whose
        denominator is a power of prod_j (1 - z_1...z_j).

    Raises:
        SingularParameterError: If z_1...z_j = 1 for some j.
        InvalidQueryError: If the c_j repeat or z has the wrong length.
        BoundExceededError: If s exceeds max_size.

    Examples:
        >>> phi_s_at_ones(1, Fraction(1), Fraction(1, 2), [Fraction(3)])
        Fraction(-1, 2)
    """
    if s < 1:
        raise InvalidQueryError(f"s must be >= 1, got {s}")
    if s > max_size:
        raise BoundExceededError(f"Phi_{s} needs {s}! terms, budget {max_size}")
    spread = _default_spread(s) if spread is None else tuple(Fraction(c) for c in spread)
    if len(spread) != s or len(set(spread)) != s:
        raise InvalidQueryError(f"Need {s} distinct spread values, got {spread}")
    t, delta = Fraction(t), Fraction(delta)
    order = s * (s - 1) // 2
    normalizer = Fraction(math.factorial(s))
    for j, k in itertools.combinations(range(s), 2):
        normalizer *= spread[k] - spread[j]

    if z is not None:
        if len(z) != s:
            raise InvalidQueryError(f"Phi_{s} takes {s} z values, got {len(z)}")
        partial = list(itertools.accumulate((Fraction(x) for x in z), lambda x, y: x * y))
        for j, value in enumerate(partial, start=1):
            if value == 1:
                raise SingularParameterError(f"z_1...z_{j} = 1 is a pole of Phi_{s}")
        return _phi_bracket(s, partial, t, delta, spread, Fraction, False) / normalizer

    names = variable_names(s, "z")
    R = poly_ring(names)
    partial = list(itertools.accumulate(R.gens, lambda x, y: x * y))
    lift = functools.partial(constant, R)
    numerator = _phi_bracket(s, partial, lift(t), lift(delta), spread, lift, True)
    factors = {1 - p: order + 1 for p in partial}
    return RationalFn(numerator.quo_ground(to_qq(normalizer)), factors)


def efp_double(q: EfpQuery) -> Fraction:
    """Double representation after the w-integration.

    s! times the residue at z_j = 0 of prod_j z_j**(-(r-s+j))
    prod_{j<k} (z_k - z_j) / kernel(z_j, z_k) h_{N,s}(z) Phi_s(1, ..., 1; z).
    """
    h, R, z, tc, dc, kappa = _setup(q)
    s = q.s
    weights = q.weights
    phi = phi_s_at_ones(s, weights.t, weights.delta)
    numerator = h.poly
    factors: dict[PolyElement, int] = {}
    for j in range(s):
        exponent = q.r - s + j + 1
        if exponent > 0:
            factors[z[j]] = exponent
        else:
            numerator *= z[j] ** (-exponent)
    for j, k in itertools.combinations(range(s), 2):
        numerator *= z[k] - z[j]
        kernel = pair_kernel(z[j], z[k], tc, dc)
        factors[kernel] = factors.get(kernel, 0) + 1
    value = iterated_residue(phi * RationalFn(numerator, factors), h.names, [0] * s)
    return math.factorial(s) * value


def efp_from_row_sum(q: EfpQuery) -> Fraction:
    """Sum of formula row probabilities over r_1 < ... < r_s <= r."""
    total = Fraction(0)
    for cfg in RowConfig.all_configs(q.n, q.s):
        if cfg.positions[-1] <= q.r:
            total += row_prob_formula(cfg, q.weights)
    return total


def efp_routes(q: EfpQuery, routes: tuple[str, ...] = ROUTES) -> dict[str, Any]:
    """Evaluate the requested routes; the oracle route uses the monodromy oracle."""
    compute = {
        "oracle": lambda: efp_oracle(q.n, q.r, q.s, Lattice.homogeneous(q.weights, q.n)),
        "row-sum": lambda: efp_from_row_sum(q),
        "rep1": lambda: efp_rep1(q),
        "rep2": lambda: efp_rep2(q),
        "double": lambda: efp_double(q),
    }
    results = {}
    for route in routes:
        if route not in compute:
            raise InvalidQueryError(f"Unknown EFP route {route!r} (expected one of {ROUTES})")
        results[route] = compute[route]()
        logger.debug("F(%s) via %s = %s", q, route, results[route])
    return results


__all__ = [
    "ROUTES",
    "EfpQuery",
    "u_of_z",
    "efp_rep1",
    "compose_with_u",
    "efp_rep2",
    "phi_s_at_ones",
    "efp_double",
    "efp_from_row_sum",
    "efp_routes",
]
