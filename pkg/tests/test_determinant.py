"""Unit tests for the Izergin-Korepin determinant."""

from fractions import Fraction

import pytest

from dwbc.backend import FloatBackend
from dwbc.determinant import PhiKernel, ik_det_hom, ik_det_inhom
from dwbc.errors import BackendError, DegenerateWeightsError, SingularParameterError
from dwbc.model import Lattice, SpectralParams, VertexWeights
from dwbc.oracle import partition_qism
from dwbc.verifier import Sampler

BACKEND = FloatBackend(50)

# Delta**2 != 1; the last triple has Delta = -7/2
REGULAR_TRIPLES = [
    VertexWeights.ice_point(),
    VertexWeights.rational(2, 1, 2),
    VertexWeights.rational(3, 2, 2),
    VertexWeights.rational(1, 2, 2),
    VertexWeights.rational(1, 1, 3),
]


def _near_homogeneous(n: int, lam: str, eta: str, step: str) -> SpectralParams:
    """lambda_alpha = lam + alpha * step, nu_k = k * step."""
    base, h = BACKEND.convert(lam), BACKEND.convert(step)
    return SpectralParams(
        tuple(base + alpha * h for alpha in range(1, n + 1)),
        tuple(k * h for k in range(1, n + 1)),
        BACKEND.convert(eta),
    )


class TestHomogeneousExact:
    """Tests for the exact homogeneous determinant."""

    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 7), (4, 42)])
    def test_ice_point(self, n, expected):
        """Test the ice point counts alternating sign matrices."""
        assert ik_det_hom(n, VertexWeights.ice_point()) == expected

    def test_two_by_two(self):
        """Test Z_2 = c**2 (a**2 + b**2)."""
        assert ik_det_hom(2, VertexWeights.rational(2, 1, 2)) == 20

    @pytest.mark.parametrize("weights", REGULAR_TRIPLES)
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_matches_oracle(self, weights, n):
        """Test agreement with the monodromy oracle."""
        assert ik_det_hom(n, weights) == partition_qism(Lattice.homogeneous(weights, n))

    def test_result_is_exact(self):
        """Test rational weights give a Fraction."""
        assert isinstance(ik_det_hom(3, VertexWeights.rational(3, 2, 2)), Fraction)

    @pytest.mark.parametrize("weights", [(3, 2, 1), (2, 1, 1), (1, 1, 2)])
    def test_degenerate_delta(self, weights):
        """Test Delta = 1 and Delta = -1 are reported as degenerate."""
        with pytest.raises(DegenerateWeightsError) as exc_info:
            ik_det_hom(2, VertexWeights.rational(*weights))
        assert isinstance(exc_info.value, SingularParameterError)

    def test_vanishing_weight(self):
        with pytest.raises(SingularParameterError):
            ik_det_hom(2, VertexWeights.rational(0, 1, 1))


class TestHomogeneousAngles:
    """Tests for the homogeneous determinant on the float backend."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_oracle(self, n):
        """Test angle weights agree with the oracle."""
        weights = VertexWeights.from_angles("1.2", "0.3", BACKEND)
        expected = partition_qism(Lattice.homogeneous(weights, n))
        assert BACKEND.is_close(ik_det_hom(n, weights), expected)

    def test_float_weights_need_angles(self):
        """Test float weights without angles are refused."""
        weights = VertexWeights(BACKEND.convert(1), BACKEND.convert(1), BACKEND.convert(1), BACKEND)
        with pytest.raises(BackendError):
            ik_det_hom(2, weights)


class TestInhomogeneous:
    """Tests for the inhomogeneous determinant."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_matches_oracle(self, n):
        """Test agreement with the oracle at random parameters."""
        sampler = Sampler(seed=n)
        _, eta = sampler.angles(BACKEND)
        params = sampler.spectral_params(n, eta, BACKEND)
        value = ik_det_inhom(params, BACKEND)
        assert BACKEND.is_close(value, partition_qism(Lattice.from_params(params, BACKEND)))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_approaches_homogeneous_limit(self, n):
        """Test parameters 1e-8 apart reproduce the homogeneous value."""
        value = ik_det_inhom(_near_homogeneous(n, "1.2", "0.3", "1e-8"), BACKEND)
        expected = ik_det_hom(n, VertexWeights.from_angles("1.2", "0.3", BACKEND))
        assert abs(value - expected) <= BACKEND.convert("1e-6") * abs(expected)

    def test_close_parameters_are_not_singular(self):
        """Test a tiny product of separations is not taken for a coincidence."""
        params = _near_homogeneous(3, "1.2", "0.3", "1e-8")
        lattice = Lattice.from_params(params, BACKEND)
        assert BACKEND.is_close(ik_det_inhom(params, BACKEND), partition_qism(lattice))

    def test_result_keeps_working_precision(self):
        """Test the guard digits do not leak into the returned value."""
        precision = BACKEND.ctx.prec
        value = ik_det_inhom(_near_homogeneous(2, "1.2", "0.3", "1e-8"), BACKEND)
        assert BACKEND.ctx.prec == precision
        assert +value == value

    def test_swapping_two_lambdas(self):
        """Test exchanging lambda_1 and lambda_2 leaves Z unchanged."""
        sampler = Sampler(seed=4)
        _, eta = sampler.angles(BACKEND)
        params = sampler.spectral_params(3, eta, BACKEND)
        lambdas = params.lambdas
        swapped = SpectralParams((lambdas[1], lambdas[0], lambdas[2]), params.nus, params.eta)
        assert BACKEND.is_close(ik_det_inhom(swapped, BACKEND), ik_det_inhom(params, BACKEND))

    def test_empty_lattice(self):
        params = SpectralParams((), (), BACKEND.convert("0.3"))
        assert ik_det_inhom(params, BACKEND) == 1

    def test_coincident_parameters(self):
        """Test repeated lambdas are refused."""
        with pytest.raises(SingularParameterError):
            SpectralParams.parse(["1.1", "1.1"], ["0", "0.1"], "0.3", BACKEND)

    def test_parameters_coinciding_modulo_pi(self):
        """Test lambdas differing by pi hit a vanishing d-factor."""
        pi = BACKEND.pi()
        params = SpectralParams(
            (BACKEND.convert("1.1"), BACKEND.convert("1.1") + pi),
            (BACKEND.convert(0), BACKEND.convert("0.1")),
            BACKEND.convert("0.3"),
        )
        with pytest.raises(SingularParameterError):
            ik_det_inhom(params, BACKEND)


class TestPhiKernel:
    """Tests for the phi kernel and its jets."""

    def test_value(self):
        kernel = PhiKernel(BACKEND.convert("0.3"), BACKEND)
        lam, nu = BACKEND.convert("1.2"), BACKEND.convert("0.1")
        a, b = kernel.weights(lam, nu)
        assert BACKEND.is_close(kernel.value(lam, nu), kernel.c / (a * b))

    def test_jet_against_central_difference(self):
        """Test the jet derivative against a central difference."""
        kernel = PhiKernel(BACKEND.convert("0.3"), BACKEND)
        lam = BACKEND.convert("1.2")
        step = BACKEND.convert("1e-14")
        derivative = kernel.derivatives(lam, 2)[1]
        difference = (kernel.value(lam + step, 0) - kernel.value(lam - step, 0)) / (2 * step)
        assert BACKEND.is_close(derivative, difference)

    def test_pole(self):
        """Test b = 0 is a pole."""
        kernel = PhiKernel(BACKEND.convert("0.3"), BACKEND)
        with pytest.raises(SingularParameterError):
            kernel.value(BACKEND.convert("0.3"), 0)
