"""Row configuration probability from its closed formulas.

H_{N,s}(r_1..r_s) = ztop * zbot / Z_N, with

* ztop from the Bethe sum over permutations (homogeneous lambda, distinct
  nu_1..nu_s) or from a residue at w_j = 1 (homogeneous weights);
* zbot from the nested sum over the lambdas exchanged through the A-B
  relation (inhomogeneous) or from a residue at z_j = 0 built on the
  multi-variable generating polynomial h_{N,s} (homogeneous).

The one-variable generating polynomials h_m(z) are taken from the oracle's
boundary correlation; everything else is formula-side.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from sympy.polys.rings import PolyElement

from .backend import ScalarBackend
from .determinant import ik_det_hom, ik_det_inhom
from .errors import BoundExceededError, DegenerateWeightsError, InvalidQueryError, SingularParameterError
from .linalg import det
from .model import Lattice, RowConfig, SpectralParams, VertexWeights
from .oracle import boundary_generating, partition_qism
from .polynomial import (
    DEFAULT_FACTORIAL_BUDGET,
    RationalFn,
    constant,
    evaluate,
    permute_variables,
    poly_ring,
    signed_permutations,
    vandermonde_quotient,
    variable_names,
)
from .residue import iterated_residue

logger = logging.getLogger(__name__)

DEFAULT_TERM_BUDGET = 10**6


def pair_kernel(x: Any, y: Any, t: Any, delta: Any) -> Any:
    """t**2 x y - 2 Delta t x + 1, the two-particle factor of every formula."""
    return t * t * x * y - 2 * delta * t * x + 1


def homogeneous_partition(n: int, weights: VertexWeights) -> Any:
    """Z_N from the homogeneous determinant, or from the oracle when Delta**2 = 1."""
    try:
        return ik_det_hom(n, weights)
    except DegenerateWeightsError:
        logger.warning("Delta = %s is degenerate for the determinant; using the oracle", weights.delta)
        return partition_qism(Lattice.homogeneous(weights, n))


def bethe_sum(ts: list[Any], positions: tuple[int, ...], delta: Any) -> Any:
    """Signed sum over P of prod_j t_{P_j}**(r_j - 1) prod_{j<k} kernel(t_{P_j}, t_{P_k})."""
    total = None
    for sign, perm in signed_permutations(len(ts)):
        term = 1
        for j, r in enumerate(positions):
            term = term * ts[perm[j]] ** (r - 1)
        for j, k in itertools.combinations(range(len(ts)), 2):
            term = term * pair_kernel(ts[perm[j]], ts[perm[k]], 1, delta)
        term = term if sign > 0 else -term
        total = term if total is None else total + term
    return total


def ztop_bethe(
    cfg: RowConfig,
    lam: Any,
    nus: list[Any],
    eta: Any,
    backend: ScalarBackend,
    max_size: int = DEFAULT_FACTORIAL_BUDGET,
) -> Any:
    """Upper sublattice partition function, homogeneous lambda and distinct nus.

    Args:
        cfg: Row configuration.
        lam: The common spectral parameter of the vertical lines.
        nus: nu_1..nu_s of the first s horizontal lines.
        eta: Crossing parameter.
        backend: Backend able to evaluate sines.
        max_size: Largest s accepted (s! terms).

    Returns:
        c**s prod_k a(lam, nu_k)**(N-1) / prod_{j<k}(t_k - t_j) times the
        Bethe sum, with t_k = b(lam, nu_k) / a(lam, nu_k).

    Raises:
        BoundExceededError: If s exceeds max_size.
        SingularParameterError: If two t_k coincide or a weight vanishes.
    """
    s = cfg.s
    if len(nus) != s:
        raise InvalidQueryError(f"ztop needs {s} nu values, got {len(nus)}")
    if s > max_size:
        raise BoundExceededError(f"Bethe sum over {s}! permutations exceeds budget {max_size}")
    if s == 0:
        return backend.one
    lam, eta = backend.convert(lam), backend.convert(eta)
    nus = [backend.convert(nu) for nu in nus]

    def upper_weights() -> tuple[list[Any], list[Any]]:
        a_values = [backend.sin(lam - nu + eta) for nu in nus]
        b_values = [backend.sin(lam - nu - eta) for nu in nus]
        if any(backend.is_zero(a) for a in a_values):
            raise SingularParameterError("Weight a vanishes on an upper row")
        return a_values, [b / a for a, b in zip(a_values, b_values)]

    _, ts = upper_weights()
    differences = [ts[k] - ts[j] for j, k in itertools.combinations(range(s), 2)]
    if any(backend.is_zero(d) for d in differences):
        raise SingularParameterError("Coinciding t values; use the residue formula for equal nus")
    # the Bethe sum cancels down to the size of the Vandermonde
    guard = sum(backend.lost_digits(d) for d in differences)

    with backend.extra_precision(guard):
        a_values, ts = upper_weights()
        vandermonde = backend.one
        for j, k in itertools.combinations(range(s), 2):
            vandermonde = vandermonde * (ts[k] - ts[j])
        prefactor = backend.sin(2 * eta) ** s
        for a in a_values:
            prefactor = prefactor * a ** (cfg.n - 1)
        value = prefactor * bethe_sum(ts, cfg.positions, backend.cos(2 * eta)) / vandermonde
    return backend.convert(value)


def ztop_residue(cfg: RowConfig, weights: VertexWeights) -> Fraction:
    """Upper sublattice partition function for homogeneous rational weights.

    c**s a**(s(N-1)) prod_j t**(r_j - j) times the residue at w_j = 1 of
    prod_j w_j**(r_j - 1) (w_j - 1)**(-s) prod_{j<k} (w_j - w_k) kernel(w_j, w_k).

    Examples:
        >>> ztop_residue(RowConfig(3, 2, (1, 3)), VertexWeights.rational(2, 1, 2))
        Fraction(72, 1)
    """
    weights.require_exact()
    s = cfg.s
    if s == 0:
        return Fraction(1)
    t, delta = weights.t, weights.delta
    names = variable_names(s, "w")
    R = poly_ring(names)
    w = R.gens
    tc, dc = constant(R, t), constant(R, delta)

    numerator = R.one
    for j, r in enumerate(cfg.positions):
        numerator *= w[j] ** (r - 1)
    for j, k in itertools.combinations(range(s), 2):
        numerator *= (w[j] - w[k]) * pair_kernel(w[j], w[k], tc, dc)
    integrand = RationalFn(numerator, {w[j] - 1: s for j in range(s)})
    residue = iterated_residue(integrand, names, [1] * s)

    prefactor = weights.c**s * weights.a ** (s * (cfg.n - 1))
    for j, r in enumerate(cfg.positions, start=1):
        prefactor *= t ** (r - j)
    return prefactor * residue


def _check_term_budget(cfg: RowConfig, budget: int) -> int:
    count = 1
    for j, r in enumerate(cfg.positions, start=1):
        count *= r - j + 1
    if count > budget:
        raise BoundExceededError(f"Nested sum for {cfg} has {count} terms, budget {budget}")
    return count


def zbot_sum_inhom(
    cfg: RowConfig,
    params: SpectralParams,
    backend: ScalarBackend,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> Any:
    """Lower sublattice partition function for distinct spectral parameters.

    Sums over distinct alpha_1..alpha_s with alpha_j <= r_j of
    prod_j prod_{k>s} a(lambda_{alpha_j}, nu_k) * (g/f)(lambda_{alpha_j}, lambda_{r_j})
    * prod_{beta} f(lambda_{alpha_j}, lambda_beta) * Z_{N-s}, where beta runs
    over 1..r_j without alpha_1..alpha_j, f(x, y) = sin(y - x + 2 eta) / sin(y - x),
    (g/f)(x, y) = sin(2 eta) / sin(y - x + 2 eta), and Z_{N-s} is the
    determinant on the unused lambdas and nu_{s+1}..nu_N.

    Raises:
        BoundExceededError: If the number of terms exceeds the budget.
        SingularParameterError: On coinciding parameters.
    """
    n = params.size
    if cfg.n != n:
        raise InvalidQueryError(f"Row configuration for N={cfg.n} with {n} spectral parameters")
    if cfg.s == n:
        return backend.one
    count = _check_term_budget(cfg, term_budget)
    sin = backend.sin
    lambdas, nus, eta = params.lambdas, params.nus, params.eta
    two_eta = 2 * eta
    lower_rows = tuple(range(cfg.s + 1, n + 1))
    inner_cache: dict[frozenset[int], Any] = {}

    def inner(used: frozenset[int]) -> Any:
        if used not in inner_cache:
            rest = tuple(alpha for alpha in range(1, n + 1) if alpha not in used)
            inner_cache[used] = ik_det_inhom(params.restrict(rest, lower_rows), backend)
        return inner_cache[used]

    def f(x: Any, y: Any) -> Any:
        denominator = sin(y - x)
        if backend.is_zero(denominator):
            raise SingularParameterError("Coinciding lambda values in the exchange factor")
        return sin(y - x + two_eta) / denominator

    def g_over_f(x: Any, y: Any) -> Any:
        return sin(two_eta) / sin(y - x + two_eta)

    def vacuum(alpha: int) -> Any:
        value = backend.one
        for k in lower_rows:
            value = value * sin(lambdas[alpha - 1] - nus[k - 1] + eta)
        return value

    def visit(j: int, used: tuple[int, ...], weight: Any) -> Any:
        if j == cfg.s:
            return weight * inner(frozenset(used))
        r = cfg.positions[j]
        total = backend.zero
        for alpha in range(1, r + 1):
            if alpha in used:
                continue
            chosen = used + (alpha,)
            x = lambdas[alpha - 1]
            term = weight * vacuum(alpha) * g_over_f(x, lambdas[r - 1])
            for beta in range(1, r + 1):
                if beta not in chosen:
                    term = term * f(x, lambdas[beta - 1])
            total = total + visit(j + 1, chosen, term)
        return total

    value = visit(0, (), backend.one)
    logger.debug("Nested zbot sum for %s: %d terms, %d inner determinants", cfg, count, len(inner_cache))
    return value


@dataclass(frozen=True)
class HMulti:
    """The symmetric polynomial h_{N,s}(z_1..z_s).

    Attributes:
        n: Lattice size N.
        s: Number of variables.
        names: Variable names z1..zs.
        poly: The polynomial.
    """

    n: int
    s: int
    names: tuple[str, ...]
    poly: PolyElement

    def evaluate(self, values: list[Any]) -> Fraction:
        if len(values) != self.s:
            raise InvalidQueryError(f"h_{{{self.n},{self.s}}} takes {self.s} values, got {len(values)}")
        return evaluate(self.poly, dict(zip(self.names, values)))

    def is_symmetric(self) -> bool:
        for j in range(self.s - 1):
            if permute_variables(self.poly, {j: j + 1, j + 1: j}) != self.poly:
                return False
        return True


@lru_cache(maxsize=256)
def h_multi_build(n: int, s: int, weights: VertexWeights) -> HMulti:
    """Build h_{N,s} as det[z_k**(s-j) (z_k - 1)**(j-1) h_{N-s+j}(z_k)] / Vandermonde.

    Raises:
        InvalidQueryError: If s is outside 1..N.
        NotDivisibleError: If the determinant is not divisible (a defect).

    Examples:
        >>> h = h_multi_build(2, 2, VertexWeights.ice_point())
        >>> h.evaluate([1, 1])
        Fraction(1, 1)
    """
    if not 1 <= s <= n:
        raise InvalidQueryError(f"h_{{N,s}} needs 1 <= s <= N, got N={n}, s={s}")
    weights.require_exact()
    names = variable_names(s, "z")
    R = poly_ring(names)
    z = R.gens
    rows = []
    for j in range(1, s + 1):
        generating = boundary_generating(n - s + j, weights)
        rows.append(
            [z[k] ** (s - j) * (z[k] - 1) ** (j - 1) * generating.as_poly(z[k]) for k in range(s)]
        )
    poly = vandermonde_quotient(det(rows), names)
    return HMulti(n, s, names, poly)


def zbot_residue(cfg: RowConfig, weights: VertexWeights, z_n: Fraction | None = None) -> Fraction:
    """Lower sublattice partition function for homogeneous rational weights.

    Z_N prod_j t**(j - r_j) / (a**(s(N-1)) c**s) times the residue at z_j = 0
    of prod_j z_j**(-r_j) prod_{j<k} (z_k - z_j) / kernel(z_j, z_k) h_{N,s}(z).
    Row s = 0 gives Z_N and row s = N gives 1.
    """
    weights.require_exact()
    n, s = cfg.n, cfg.s
    if s == n:
        return Fraction(1)
    if z_n is None:
        z_n = homogeneous_partition(n, weights)
    if s == 0:
        return z_n
    t, delta = weights.t, weights.delta
    h = h_multi_build(n, s, weights)
    R = h.poly.ring
    z = R.gens
    tc, dc = constant(R, t), constant(R, delta)

    numerator = h.poly
    factors: dict[PolyElement, int] = {}
    for j, r in enumerate(cfg.positions):
        factors[z[j]] = r
    for j, k in itertools.combinations(range(s), 2):
        numerator *= z[k] - z[j]
        kernel = pair_kernel(z[j], z[k], tc, dc)
        factors[kernel] = factors.get(kernel, 0) + 1
    residue = iterated_residue(RationalFn(numerator, factors), h.names, [0] * s)

    prefactor = z_n / (weights.a ** (s * (n - 1)) * weights.c**s)
    for j, r in enumerate(cfg.positions, start=1):
        prefactor *= t ** (j - r)
    return prefactor * residue


def row_prob_formula(cfg: RowConfig, weights: VertexWeights) -> Fraction:
    """Row configuration probability ztop_residue * zbot_residue / Z_N.

    Raises:
        SingularParameterError: If Z_N vanishes.
    """
    z_n = homogeneous_partition(cfg.n, weights)
    if z_n == 0:
        raise SingularParameterError(f"Partition function vanishes for {cfg}")
    value = ztop_residue(cfg, weights) * zbot_residue(cfg, weights, z_n) / z_n
    logger.debug("H(%s) = %s", cfg, value)
    return value


def row_prob_table(n: int, s: int, weights: VertexWeights) -> list[tuple[RowConfig, Fraction]]:
    """Formula probabilities of every configuration of row s."""
    return [(cfg, row_prob_formula(cfg, weights)) for cfg in RowConfig.all_configs(n, s)]


__all__ = [
    "DEFAULT_TERM_BUDGET",
    "pair_kernel",
    "homogeneous_partition",
    "bethe_sum",
    "ztop_bethe",
    "ztop_residue",
    "zbot_sum_inhom",
    "HMulti",
    "h_multi_build",
    "zbot_residue",
    "row_prob_formula",
    "row_prob_table",
]
