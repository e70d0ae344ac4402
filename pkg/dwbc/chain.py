"""Spin-chain vectors and monodromy entries as streaming linear maps.

A ``ChainVector`` is a dense list of 2**M amplitudes indexed by bitmask; bit
k set means spin up on site k. Monodromy entries A, B, C, D are never built
as matrices: the L-operators are applied one site at a time to a pair of
vectors carrying the two auxiliary components.

For one site with weights (a, b, c) the L-operator, as a matrix in the
auxiliary space (index 0 = up), is::

    [[a P_up + b P_down,  c s_minus],
     [c s_plus,           b P_up + a P_down]]

and the monodromy matrix is L_M ... L_1, site 1 being applied first.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Any

from .backend import RATIONAL, ScalarBackend
from .errors import InvalidQueryError
from .model import WeightTriple


class Entry(Enum):
    """Monodromy matrix entry as (output, input) auxiliary indices."""

    A = (0, 0)
    B = (0, 1)
    C = (1, 0)
    D = (1, 1)

    @property
    def start(self) -> int:
        return self.value[1]

    @property
    def end(self) -> int:
        return self.value[0]


class Orientation(Enum):
    """Which lattice lines form the sites of the chain."""

    VERTICAL = "vertical"  # auxiliary: a vertical line; sites: horizontal lines
    HORIZONTAL = "horizontal"  # auxiliary: a horizontal line; sites: vertical lines


@dataclass(frozen=True)
class ChainVector:
    """Vector in the 2**M dimensional spin space.

    Attributes:
        sites: Number of sites M.
        amplitudes: 2**M backend scalars indexed by bitmask.
    """

    sites: int
    amplitudes: tuple[Any, ...]

    def __post_init__(self):
        if len(self.amplitudes) != 1 << self.sites:
            raise InvalidQueryError(
                f"{self.sites} sites need {1 << self.sites} amplitudes, got {len(self.amplitudes)}"
            )

    @classmethod
    def basis(cls, sites: int, mask: int, backend: ScalarBackend = RATIONAL) -> "ChainVector":
        zero, one = backend.zero, backend.one
        return cls(sites, tuple(one if i == mask else zero for i in range(1 << sites)))

    @classmethod
    def all_up(cls, sites: int, backend: ScalarBackend = RATIONAL) -> "ChainVector":
        return cls.basis(sites, (1 << sites) - 1, backend)

    @classmethod
    def all_down(cls, sites: int, backend: ScalarBackend = RATIONAL) -> "ChainVector":
        return cls.basis(sites, 0, backend)

    @classmethod
    def zero(cls, sites: int, backend: ScalarBackend = RATIONAL) -> "ChainVector":
        return cls(sites, (backend.zero,) * (1 << sites))

    def component(self, mask: int) -> Any:
        return self.amplitudes[mask]

    def __add__(self, other: "ChainVector") -> "ChainVector":
        self._check(other)
        return ChainVector(self.sites, tuple(x + y for x, y in zip(self.amplitudes, other.amplitudes)))

    def __sub__(self, other: "ChainVector") -> "ChainVector":
        self._check(other)
        return ChainVector(self.sites, tuple(x - y for x, y in zip(self.amplitudes, other.amplitudes)))

    def scale(self, factor: Any) -> "ChainVector":
        return ChainVector(self.sites, tuple(x * factor for x in self.amplitudes))

    def _check(self, other: "ChainVector") -> None:
        if other.sites != self.sites:
            raise InvalidQueryError(f"Site count mismatch: {self.sites} vs {other.sites}")

    def support(self, backend: ScalarBackend = RATIONAL) -> list[int]:
        """Bitmasks with a nonzero amplitude."""
        return [mask for mask, x in enumerate(self.amplitudes) if not backend.is_zero(x)]

    def is_close(self, other: "ChainVector", backend: ScalarBackend = RATIONAL) -> bool:
        self._check(other)
        return all(backend.is_close(x, y) for x, y in zip(self.amplitudes, other.amplitudes))


def _apply_site(
    pair: tuple[list[Any], list[Any]], site: int, weights: WeightTriple
) -> tuple[list[Any], list[Any]]:
    up_vec, down_vec = pair
    a, b, c = weights
    bit = 1 << site
    zero = up_vec[0] * 0
    new_up = [zero] * len(up_vec)
    new_down = [zero] * len(up_vec)
    for mask in range(len(up_vec)):
        x, y = up_vec[mask], down_vec[mask]
        if mask & bit:
            # site up: diagonal parts, and s_minus carries the down component up
            new_up[mask] = new_up[mask] + a * x
            new_down[mask] = new_down[mask] + b * y
            new_up[mask ^ bit] = new_up[mask ^ bit] + c * y
        else:
            new_up[mask] = new_up[mask] + b * x
            new_down[mask] = new_down[mask] + a * y
            new_down[mask | bit] = new_down[mask | bit] + c * x
    return new_up, new_down


def apply_entry(entry: Entry, site_weights: Sequence[WeightTriple], v: ChainVector) -> ChainVector:
    """Apply a monodromy entry given the weights of each site in order.

    Raises:
        InvalidQueryError: If the number of site weights is not v.sites.
    """
    if len(site_weights) != v.sites:
        raise InvalidQueryError(
            f"Monodromy over {len(site_weights)} sites applied to a {v.sites}-site vector"
        )
    amplitudes = list(v.amplitudes)
    zero = amplitudes[0] * 0
    empty = [zero] * len(amplitudes)
    pair = (amplitudes, empty) if entry.start == 0 else (empty, amplitudes)
    for site, weights in enumerate(site_weights):
        pair = _apply_site(pair, site, weights)
    return ChainVector(v.sites, tuple(pair[entry.end]))


def apply_monodromy_entry(
    entry: Entry | str,
    orientation: Orientation | str,
    spectral: Any,
    site_params: Sequence[Any],
    v: ChainVector,
    weight: Callable[[Any, Any], WeightTriple],
) -> ChainVector:
    """Apply A, B, C or D of a line's monodromy matrix to a chain vector.

    Args:
        entry: Which entry ("A", "B", "C" or "D").
        orientation: "vertical" (spectral is a lambda, sites are nus) or
            "horizontal" (spectral is a nu, sites are lambdas).
        spectral: Parameter of the auxiliary line.
        site_params: Parameters of the sites, site 1 first.
        v: Vector to act on.
        weight: Vertex weights as a function of (lambda, nu).

    Returns:
        The transformed vector. A and D keep the number of up spins, B lowers
        it by one and C raises it by one.

    Raises:
        InvalidQueryError: On a dimension mismatch.

    Examples:
        >>> lattice = Lattice.homogeneous(VertexWeights.ice_point(), 2)
        >>> up = ChainVector.all_up(2)
        >>> apply_monodromy_entry("C", "vertical", 0, [0, 0], up, lattice.weight).support()
        []
    """
    entry = entry if isinstance(entry, Entry) else Entry[entry]
    orientation = orientation if isinstance(orientation, Orientation) else Orientation(orientation)
    if orientation is Orientation.VERTICAL:
        site_weights = [weight(spectral, p) for p in site_params]
    else:
        site_weights = [weight(p, spectral) for p in site_params]
    return apply_entry(entry, site_weights, v)


__all__ = [
    "Entry",
    "Orientation",
    "ChainVector",
    "apply_entry",
    "apply_monodromy_entry",
]
