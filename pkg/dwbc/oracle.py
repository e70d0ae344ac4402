"""Ground-truth partition functions and correlation functions.

Everything here is computed by direct evaluation: monodromy entries applied
to spin-chain vectors (``partition_qism``, ``ztop_oracle``, ``zbot_oracle``)
or a depth-first sum over ice-rule configurations (``enumerate_dfs``). The
formula engines are tested against these functions.

Row and position conventions: rows k = 1..N are counted from the top,
positions r = 1..N from the right; below row s exactly s arrows point up.
Row s = 0 and row s = N are accepted as boundary rows (ztop = 1 and
zbot = 1 respectively).

Examples:
    >>> lattice = Lattice.homogeneous(VertexWeights.ice_point(), 4)
    >>> partition_qism(lattice)
    Fraction(42, 1)
    >>> enumerate_dfs(lattice)
    Fraction(42, 1)
"""

import logging
from functools import lru_cache
from typing import Any

from .chain import ChainVector, Entry, Orientation, apply_monodromy_entry
from .errors import BoundExceededError, DwbcError, InvalidQueryError, SingularParameterError
from .model import BoundaryGenerating, Lattice, RowConfig, VertexWeights

logger = logging.getLogger(__name__)

DEFAULT_QISM_BOUND = 12
DEFAULT_DFS_BOUND = 6

ROUTES = ("vertical", "horizontal")


def _check_bound(n: int, bound: int, what: str) -> None:
    if n > bound:
        raise BoundExceededError(f"{what} limited to N <= {bound}, got N={n}")


def partition_qism(lattice: Lattice, route: str = "vertical", bound: int = DEFAULT_QISM_BOUND) -> Any:
    """Partition function as a matrix element of monodromy entries.

    Args:
        lattice: Square N x N lattice.
        route: "vertical" for <down| B(lambda_1)...B(lambda_N) |up> on the
            horizontal-line space, "horizontal" for
            <up| C(nu_1)...C(nu_N) |down> on the vertical-line space.
        bound: Largest N accepted.

    Returns:
        Z_N as a backend scalar.

    Raises:
        BoundExceededError: If N exceeds the bound.
        InvalidQueryError: For an unknown route or a non-square lattice.
    """
    n = lattice.size
    _check_bound(n, bound, "Monodromy oracle")
    backend = lattice.backend
    if route == "vertical":
        v = ChainVector.all_up(n, backend)
        for lam in lattice.lambdas:
            v = apply_monodromy_entry(Entry.B, Orientation.VERTICAL, lam, lattice.nus, v, lattice.weight)
        value = v.component(0)
    elif route == "horizontal":
        v = ChainVector.all_down(n, backend)
        for nu in lattice.nus:
            v = apply_monodromy_entry(Entry.C, Orientation.HORIZONTAL, nu, lattice.lambdas, v, lattice.weight)
        value = v.component((1 << n) - 1)
    else:
        raise InvalidQueryError(f"Unknown route {route!r} (expected one of {ROUTES})")
    logger.debug("Z_%d via %s monodromy: %s", n, route, backend.format(value))
    return value


def enumerate_dfs(
    lattice: Lattice,
    row_config: RowConfig | None = None,
    bound: int = DEFAULT_DFS_BOUND,
) -> Any:
    """Weighted sum over ice-rule configurations with domain wall boundaries.

    Vertices are visited row by row from the top, right to left within a row.
    Each vertex sees the horizontal arrow coming from its right and the
    vertical arrow coming from above; equal arrows pass unchanged (weight a),
    different arrows either pass unchanged (weight b) or both flip (weight c).
    Every row enters up on the right and must leave down on the left; the
    top boundary is all down and the bottom boundary all up.

    Args:
        lattice: Square N x N lattice.
        row_config: If given, only configurations whose row s has its up
            arrows exactly at the given positions are summed.
        bound: Largest N accepted.

    Returns:
        The weighted configuration sum.

    Raises:
        BoundExceededError: If N exceeds the bound.
    """
    n = lattice.size
    _check_bound(n, bound, "Configuration enumeration")
    if row_config is not None and row_config.n != n:
        raise InvalidQueryError(f"Row configuration for N={row_config.n} on an N={n} lattice")
    table = [[lattice.vertex(alpha, k) for alpha in range(1, n + 1)] for k in range(1, n + 1)]
    zero = lattice.backend.zero
    full = (1 << n) - 1
    found = [0]

    def visit(k: int, alpha: int, h_up: bool, vmask: int, weight: Any) -> Any:
        if alpha == n:
            if h_up:
                return zero
            ups = bin(vmask).count("1")
            if ups != k + 1:
                raise DwbcError(f"Row {k + 1} left {ups} up arrows; the ice rule is broken")
            if row_config is not None and row_config.s == k + 1 and vmask != row_config.mask:
                return zero
            if k == n - 1:
                if vmask != full:
                    return zero
                found[0] += 1
                return weight
            return visit(k + 1, 0, True, vmask, weight)
        bit = 1 << alpha
        v_up = bool(vmask & bit)
        a, b, c = table[k][alpha]
        if h_up == v_up:
            return visit(k, alpha + 1, h_up, vmask, weight * a)
        kept = visit(k, alpha + 1, h_up, vmask, weight * b)
        flipped = visit(k, alpha + 1, not h_up, vmask ^ bit, weight * c)
        return kept + flipped

    total = visit(0, 0, True, 0, lattice.backend.one)
    logger.debug("Enumerated %d configurations for N=%d", found[0], n)
    return total


def ztop_oracle(cfg: RowConfig, lattice: Lattice, bound: int = DEFAULT_QISM_BOUND) -> Any:
    """Partition function of the upper s x N sublattice.

    Computed as <r_1..r_s| C(nu_1)...C(nu_s) |down> on the vertical-line
    space: the top boundary is all down and the arrows below row s point up
    exactly at the given positions.
    """
    n = lattice.size
    _check_bound(n, bound, "Monodromy oracle")
    _check_config(cfg, n)
    if cfg.s == 0:
        return lattice.backend.one
    v = ChainVector.all_down(n, lattice.backend)
    for nu in lattice.nus[: cfg.s]:
        v = apply_monodromy_entry(Entry.C, Orientation.HORIZONTAL, nu, lattice.lambdas, v, lattice.weight)
    return v.component(cfg.mask)


def zbot_oracle(cfg: RowConfig, lattice: Lattice, bound: int = DEFAULT_QISM_BOUND) -> Any:
    """Partition function of the lower (N - s) x N sublattice.

    The vertical monodromy is truncated to the horizontal lines s+1..N;
    line alpha contributes A(lambda_alpha) when alpha is one of the up
    positions and B(lambda_alpha) otherwise, line 1 acting first on the
    all-up state. The matrix element is read on the all-down state.
    """
    n = lattice.size
    _check_bound(n, bound, "Monodromy oracle")
    _check_config(cfg, n)
    if cfg.s == n:
        return lattice.backend.one
    sites = lattice.nus[cfg.s :]
    v = ChainVector.all_up(len(sites), lattice.backend)
    positions = set(cfg.positions)
    for alpha, lam in enumerate(lattice.lambdas, start=1):
        entry = Entry.A if alpha in positions else Entry.B
        v = apply_monodromy_entry(entry, Orientation.VERTICAL, lam, sites, v, lattice.weight)
    return v.component(0)


def _check_config(cfg: RowConfig, n: int) -> None:
    if cfg.n != n:
        raise InvalidQueryError(f"Row configuration for N={cfg.n} on an N={n} lattice")


def _require_probability(value: Any, lattice: Lattice, what: str) -> None:
    weights = lattice.weights
    if weights is None or not weights.is_exact or not weights.is_positive:
        return
    if not 0 <= value <= 1:
        raise DwbcError(f"{what} = {value} outside [0, 1] for positive weights {weights.describe()}")


def row_prob_oracle(
    cfg: RowConfig,
    lattice: Lattice,
    z_n: Any = None,
    bound: int = DEFAULT_QISM_BOUND,
) -> Any:
    """Row configuration probability ztop * zbot / Z_N.

    Args:
        cfg: Row configuration.
        lattice: Square lattice.
        z_n: Precomputed partition function (computed when omitted).
        bound: Largest N accepted.

    Raises:
        SingularParameterError: If the partition function vanishes.
    """
    if z_n is None:
        z_n = partition_qism(lattice, bound=bound)
    if lattice.backend.is_zero(z_n):
        raise SingularParameterError(f"Partition function vanishes for {cfg}")
    value = ztop_oracle(cfg, lattice, bound) * zbot_oracle(cfg, lattice, bound) / z_n
    _require_probability(value, lattice, f"H({cfg})")
    return value


def boundary_H(n: int, r: int, weights: VertexWeights) -> Any:
    """One-point boundary correlation H_N^(r), the s = 1 row probability."""
    cfg = RowConfig(n, 1, (r,))
    return row_prob_oracle(cfg, Lattice.homogeneous(weights, n))


@lru_cache(maxsize=128)
def boundary_generating(n: int, weights: VertexWeights) -> BoundaryGenerating:
    """Coefficients of h_N(z) = sum_r H_N^(r) z**(r-1) from the oracle.

    Examples:
        >>> boundary_generating(3, VertexWeights.ice_point()).coefficients
        (Fraction(2, 7), Fraction(3, 7), Fraction(2, 7))
    """
    lattice = Lattice.homogeneous(weights, n)
    z_n = partition_qism(lattice)
    coefficients = tuple(
        row_prob_oracle(RowConfig(n, 1, (r,)), lattice, z_n) for r in range(1, n + 1)
    )
    return BoundaryGenerating(n, coefficients)


def efp_oracle(n: int, r: int, s: int, lattice: Lattice) -> Any:
    """Emptiness formation probability as a sum of row probabilities.

    F_N^(r,s) sums H over the configurations of row s with r_s <= r.

    Raises:
        InvalidQueryError: If r or s is outside 1..N.
    """
    if not 1 <= r <= n:
        raise InvalidQueryError(f"r={r} outside 1..{n}")
    if not 1 <= s <= n:
        raise InvalidQueryError(f"s={s} outside 1..{n}")
    if lattice.size != n:
        raise InvalidQueryError(f"EFP for N={n} on an N={lattice.size} lattice")
    z_n = partition_qism(lattice)
    total = lattice.backend.zero
    for cfg in RowConfig.all_configs(n, s):
        if cfg.positions[-1] <= r:
            total = total + row_prob_oracle(cfg, lattice, z_n)
    return total


def vacuum_eigenvalues(lattice: Lattice, lam: Any) -> tuple[Any, Any]:
    """Eigenvalues of A(lam) and D(lam) on the all-up state.

    Returns:
        (prod_k a(lam, nu_k), prod_k b(lam, nu_k)) read off the chain.

    Raises:
        DwbcError: If the all-up state is not an eigenvector.
    """
    n = len(lattice.nus)
    backend = lattice.backend
    up = ChainVector.all_up(n, backend)
    values = []
    for entry in (Entry.A, Entry.D):
        image = apply_monodromy_entry(entry, Orientation.VERTICAL, lam, lattice.nus, up, lattice.weight)
        value = image.component((1 << n) - 1)
        if not image.is_close(up.scale(value), backend):
            raise DwbcError(f"All-up state is not an eigenvector of {entry.name}")
        values.append(value)
    return values[0], values[1]


__all__ = [
    "DEFAULT_QISM_BOUND",
    "DEFAULT_DFS_BOUND",
    "ROUTES",
    "partition_qism",
    "enumerate_dfs",
    "ztop_oracle",
    "zbot_oracle",
    "row_prob_oracle",
    "boundary_H",
    "boundary_generating",
    "efp_oracle",
    "vacuum_eigenvalues",
]
