"""DWBC Toolkit Error Hierarchy.

This module defines exception classes for size bounds, invalid queries,
singular parameters, backend limitations and exact-algebra failures,
standardizing error handling across the oracle, the engines and the CLI.
"""

from typing import Final


class DwbcError(Exception):
    """Base exception for all toolkit errors.

    This is the root of the toolkit's error hierarchy. Catching this exception
    will catch every failure raised by the exact-algebra layer, the oracle and
    the formula engines.

    Args:
        message: Human-readable error description.

    Examples:
        >>> try:
        ...     value = partition_qism(lattice)
        ... except DwbcError as e:
        ...     logger.error(f"Computation failed: {e}")

    Note:
        The CLI maps ``DwbcError`` to exit code 1 and ``ValueError`` raised
        while reading configuration to exit code 2.
    """


class BoundExceededError(DwbcError):
    """A configured size or work budget was exceeded.

    Raised when the oracle is asked for a lattice larger than its bound, when a
    permutation sum would materialize more than the factorial budget allows, or
    when a nested sum would produce more terms than the term budget.

    Args:
        message: Human-readable error description.

    Examples:
        >>> if n > bound:
        ...     raise BoundExceededError(f"N={n} exceeds oracle bound {bound}")

    Note:
        **Not a defect**. Raise the bound in the run configuration if the
        larger computation is intended.
    """


class InvalidQueryError(DwbcError, ValueError):
    """Query arguments violate the documented ranges.

    Raised for malformed row configurations, out-of-range positions or
    indices, mismatched vector dimensions, non-square matrices and variables
    that do not belong to a polynomial ring.

    Args:
        message: Human-readable error description.

    Examples:
        >>> if not 1 <= r <= n:
        ...     raise InvalidQueryError(f"r={r} outside 1..{n}")
    """


class SingularParameterError(DwbcError):
    """Parameters hit a zero denominator of the formula being evaluated.

    Raised for coincident spectral parameters, vanishing vertex weights,
    a zero partition function, or sample points on a pole locus.

    Args:
        message: Human-readable error description.

    Examples:
        >>> if lambdas[i] == lambdas[j]:
        ...     raise SingularParameterError('coincident lambda values')

    Note:
        **Recoverable** by moving the parameters. The verifier resamples
        random points that land on a pole locus.
    """


class DegenerateWeightsError(SingularParameterError):
    """The route has no formula at these weights, although Z_N is finite.

    Raised by the homogeneous determinant when Delta**2 = 1, where the
    trigonometric parametrization of the weights degenerates.

    Args:
        message: Human-readable error description.

    Note:
        **Not a disagreement**. The CLI and the cross-check suite report
        the route as not applicable; the oracle still gives the value.
    """


class BackendError(DwbcError):
    """Operation not available on the active scalar backend.

    The exact rational backend cannot evaluate trigonometric functions away
    from zero, and symbolic routes require exact rational weights.

    Args:
        message: Human-readable error description.

    Examples:
        >>> if not isinstance(weights.a, Fraction):
        ...     raise BackendError('residue route needs rational weights')
    """


class NotDivisibleError(DwbcError):
    """Exact polynomial division left a remainder.

    Raised by the Vandermonde quotient when the input is not antisymmetric.
    The quotient is never rounded.

    Args:
        message: Human-readable error description.
    """


class ResidueError(DwbcError):
    """Residue extraction could not be carried out.

    Raised when a denominator factor vanishes identically, when the requested
    variables do not exhaust the integrand, or when a multi-variable result is
    requested as a scalar.

    Args:
        message: Human-readable error description.
    """


__all__: Final[list[str]] = [
    "DwbcError",
    "BoundExceededError",
    "InvalidQueryError",
    "SingularParameterError",
    "DegenerateWeightsError",
    "BackendError",
    "NotDivisibleError",
    "ResidueError",
]
