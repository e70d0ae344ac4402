"""Izergin-Korepin determinant for the domain wall partition function.

Two evaluations are provided:

* ``ik_det_inhom``: the N x N determinant of phi(lambda_alpha, nu_k) with
  its product prefactor, for distinct spectral parameters (float backend);
* ``ik_det_hom``: the homogeneous limit, a Hankel determinant of the
  derivatives of phi(lambda). Derivatives come from jet arithmetic, never
  from finite differences.

For exact rational weights (a, b, c) the homogeneous limit is evaluated in
closed form. Writing the weights as rho*sin(lambda +- eta), rho*sin(2 eta)
gives cos(2 lambda) = Delta - 2 g0 with g0 = ab/rho**2, while sin(2 lambda)
is carried as a formal square root y with y**2 = 1 - cos(2 lambda)**2. The
jets then live in QQ[y]; the determinant is even in y, so reducing y**2
leaves a rational number.

Examples:
    >>> ik_det_hom(3, VertexWeights.ice_point())
    Fraction(7, 1)
    >>> ik_det_hom(2, VertexWeights.rational(2, 1, 2))
    Fraction(20, 1)
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .backend import RATIONAL, ScalarBackend
from .errors import BackendError, DegenerateWeightsError, DwbcError, SingularParameterError
from .jet import Jet, trig_jet
from .linalg import det
from .model import SpectralParams, VertexWeights
from .polynomial import constant, from_qq, poly_ring

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhiKernel:
    """The kernel phi(lambda, nu) = c / (a(lambda, nu) b(lambda, nu)).

    Attributes:
        eta: Crossing parameter.
        backend: Scalar backend evaluating the sines.
    """

    eta: Any
    backend: ScalarBackend

    @property
    def c(self) -> Any:
        return self.backend.sin(2 * self.eta)

    def weights(self, lam: Any, nu: Any) -> tuple[Any, Any]:
        sin = self.backend.sin
        return sin(lam - nu + self.eta), sin(lam - nu - self.eta)

    def value(self, lam: Any, nu: Any) -> Any:
        """phi(lam, nu).

        Raises:
            SingularParameterError: If a or b vanishes.
        """
        a, b = self.weights(lam, nu)
        if self.backend.is_zero(a) or self.backend.is_zero(b):
            raise SingularParameterError(f"phi has a pole at lambda - nu = {lam - nu}")
        return self.c / (a * b)

    def jet(self, lam: Any, order: int) -> Jet:
        """Taylor coefficients of phi(lam + x, 0) about x = 0."""
        plus = trig_jet("sin", self.eta, lam, order, self.backend)
        minus = trig_jet("sin", -self.eta, lam, order, self.backend)
        return (plus * minus).reciprocal().scale(self.c)

    def derivatives(self, lam: Any, order: int) -> list[Any]:
        """phi(lam), phi'(lam), ..., the order-th derivative."""
        return self.jet(lam, order).derivatives()


def _factorial_square_product(n: int) -> int:
    result = 1
    for k in range(1, n):
        result *= math.factorial(k) ** 2
    return result


def ik_det_inhom(params: SpectralParams, backend: ScalarBackend) -> Any:
    """Partition function from the inhomogeneous determinant formula.

    Args:
        params: Distinct lambdas and nus with eta, as backend scalars.
        backend: Scalar backend able to evaluate sines.

    Returns:
        prod a*b / (prod_{alpha<beta} d(lambda_beta, lambda_alpha)
        prod_{j<k} d(nu_j, nu_k)) * det phi(lambda_alpha, nu_k), with
        d(x, y) = sin(x - y). The empty lattice gives 1.

    Close parameters make the determinant and the d-factors small together;
    the cancellation is absorbed by raising the working precision by the
    digits the d-factors lose.

    Raises:
        SingularParameterError: If a weight or a d-factor vanishes.
        BackendError: If the backend cannot take the sines.
    """
    n = params.size
    if n == 0:
        return backend.one
    factors = _d_factors(params, backend)
    for factor in factors:
        if backend.is_zero(factor):
            raise SingularParameterError("Spectral parameters coincide modulo pi")
    guard = sum(backend.lost_digits(factor) for factor in factors)

    with backend.extra_precision(guard):
        kernel = PhiKernel(params.eta, backend)
        numerator = backend.one
        rows = []
        for lam in params.lambdas:
            row = []
            for nu in params.nus:
                a, b = kernel.weights(lam, nu)
                numerator = numerator * a * b
                row.append(kernel.value(lam, nu))
            rows.append(row)
        denominator = backend.one
        for factor in _d_factors(params, backend):
            denominator = denominator * factor
        value = numerator / denominator * det(rows, backend)
    value = backend.convert(value)
    logger.debug("Inhomogeneous determinant for N=%d (%d guard digits): %s", n, guard, backend.format(value))
    return value


def _d_factors(params: SpectralParams, backend: ScalarBackend) -> list[Any]:
    sin = backend.sin
    factors = []
    for i in range(params.size):
        for j in range(i + 1, params.size):
            factors.append(sin(params.lambdas[j] - params.lambdas[i]))
            factors.append(sin(params.nus[i] - params.nus[j]))
    return factors


def _reduce_square_root(p: Any, square: Fraction) -> Fraction:
    """Substitute y**2 = square in a polynomial of QQ[y]; odd powers must cancel."""
    even = Fraction(0)
    for (exponent,), coeff in p.terms():
        if exponent % 2:
            raise DwbcError(f"Homogeneous determinant has an odd part in sin(2 lambda): {p}")
        even += from_qq(coeff) * square ** (exponent // 2)
    return even


def _ik_det_hom_exact(n: int, weights: VertexWeights) -> Fraction:
    weights.require_nonzero()
    a, b, c = weights.a, weights.b, weights.c
    delta = weights.delta
    if delta * delta == 1:
        raise DegenerateWeightsError(f"Delta = {delta}: the trigonometric parametrization degenerates")
    rho_squared = c * c / (1 - delta * delta)
    g0 = a * b / rho_squared
    cos_two_lambda = delta - 2 * g0
    sin_squared = 1 - cos_two_lambda**2

    R = poly_ring(("y",))
    y = R.gens[0]
    order = 2 * n - 2
    cos_jet = trig_jet("cos", 0, 0, order).dilate(2)
    sin_jet = trig_jet("sin", 0, 0, order).dilate(2)
    # sin(lambda + x + eta) sin(lambda + x - eta) = (Delta - cos(2 lambda + 2x)) / 2
    product = Jet(
        tuple(
            (constant(R, (delta if m == 0 else 0) - cos_two_lambda * cos_jet[m]) + y * constant(R, sin_jet[m]))
            * constant(R, Fraction(1, 2))
            for m in range(order + 1)
        ),
        "x",
    )
    derivatives = product.reciprocal().derivatives()
    hankel = [[derivatives[i + k] for k in range(n)] for i in range(n)]
    determinant = _reduce_square_root(det(hankel), sin_squared)
    value = (
        rho_squared ** (n * (n - 1) // 2)
        * c**n
        * g0 ** (n * n)
        * determinant
        / _factorial_square_product(n)
    )
    return value


def _ik_det_hom_angles(n: int, weights: VertexWeights) -> Any:
    backend = weights.backend
    kernel = PhiKernel(weights.eta, backend)
    derivatives = kernel.derivatives(weights.lam, 2 * n - 2)
    hankel = [[derivatives[i + k] for k in range(n)] for i in range(n)]
    prefactor = (weights.a * weights.b) ** (n * n)
    return prefactor * backend.det(hankel) / backend.convert(_factorial_square_product(n))


def ik_det_hom(n: int, weights: VertexWeights) -> Any:
    """Homogeneous partition function Z_N from the Hankel determinant.

    Args:
        n: Lattice size N >= 1.
        weights: Exact rational weights, or weights built from angles
            (lambda, eta) on the float backend.

    Returns:
        Z_N, exact for rational weights.

    Raises:
        SingularParameterError: If a or b vanishes.
        DegenerateWeightsError: If Delta**2 = 1.
        BackendError: For float weights given without their angles.
    """
    if n < 1:
        raise DwbcError(f"N must be >= 1, got {n}")
    if weights.is_exact and weights.backend == RATIONAL:
        value = _ik_det_hom_exact(n, weights)
    elif weights.lam is not None and weights.eta is not None:
        value = _ik_det_hom_angles(n, weights)
    else:
        raise BackendError("Float weights need their angles (lambda, eta) for the homogeneous determinant")
    logger.debug("Homogeneous determinant for N=%d: %s", n, weights.backend.format(value))
    return value


__all__ = ["PhiKernel", "ik_det_inhom", "ik_det_hom"]
