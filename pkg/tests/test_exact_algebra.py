"""Unit tests for the exact algebra: backends, jets, polynomials, residues and determinants."""

from fractions import Fraction
from itertools import permutations

import pytest

from dwbc.backend import RATIONAL, FloatBackend, get_backend
from dwbc.errors import (
    BackendError,
    BoundExceededError,
    InvalidQueryError,
    NotDivisibleError,
    SingularParameterError,
)
from dwbc.jet import Jet, trig_jet
from dwbc.linalg import cofactor_det, det
from dwbc.polynomial import (
    RationalFn,
    antisymmetrize,
    constant,
    evaluate,
    permute_variables,
    poly_ring,
    vandermonde,
    vandermonde_quotient,
)
from dwbc.residue import iterated_residue, residue_in


class TestRationalBackend:
    """Tests for the exact rational backend."""

    def test_converts_strings_and_ints(self):
        assert RATIONAL.convert("3/4") == Fraction(3, 4)
        assert RATIONAL.convert(2) == Fraction(2)

    def test_refuses_garbage(self):
        with pytest.raises(BackendError):
            RATIONAL.convert("abc")
        with pytest.raises(BackendError):
            RATIONAL.convert(True)

    def test_sine_only_at_zero(self):
        """Test trigonometric functions exist only at zero."""
        assert RATIONAL.sin(0) == 0
        assert RATIONAL.cos(0) == 1
        with pytest.raises(BackendError):
            RATIONAL.sin(Fraction(1, 2))


class TestFloatBackend:
    """Tests for the mpmath backend."""

    def test_minimum_digits(self):
        with pytest.raises(InvalidQueryError):
            FloatBackend(20)

    def test_refuses_binary_floats(self):
        with pytest.raises(BackendError):
            FloatBackend(50).convert(0.1)

    def test_tolerance_is_half_the_digits(self):
        """Test values agree to half the working digits."""
        backend = FloatBackend(50)
        x = backend.convert("1.5")
        assert backend.is_close(x, x + backend.convert("1e-40"))
        assert not backend.is_close(x, x + backend.convert("1e-10"))

    def test_get_backend_is_cached(self):
        assert get_backend("float", 40) is get_backend("float", 40)
        assert get_backend("rational") is RATIONAL
        with pytest.raises(InvalidQueryError):
            get_backend("complex")


class TestJet:
    """Tests for truncated Taylor jets."""

    def test_sin_coefficients(self):
        jet = trig_jet("sin", 0, 0, 3)
        assert jet.coefficients == (0, 1, 0, Fraction(-1, 6))

    def test_reciprocal_of_one_minus_x(self):
        jet = Jet((Fraction(1), Fraction(-1), Fraction(0), Fraction(0)))
        assert jet.reciprocal().coefficients == (1, 1, 1, 1)

    def test_reciprocal_needs_invertible_constant_term(self):
        with pytest.raises(SingularParameterError):
            Jet((Fraction(0), Fraction(1))).reciprocal()

    def test_scaled_reciprocal_matches_reciprocal(self):
        """Test G / c_0**(K+1) equals 1/f."""
        jet = Jet((Fraction(2), Fraction(3), Fraction(5)))
        scaled = jet.scaled_reciprocal()
        exact = jet.reciprocal()
        for x, y in zip(scaled.coefficients, exact.coefficients):
            assert x / 2**3 == y

    def test_derivatives_of_exp_like_jet(self):
        jet = Jet(tuple(Fraction(1, f) for f in (1, 1, 2, 6)))
        assert jet.derivatives() == [1, 1, 1, 1]

    def test_dilate(self):
        """Test f(2x) scales coefficient j by 2**j."""
        jet = trig_jet("cos", 0, 0, 2).dilate(2)
        assert jet.coefficients == (1, 0, -2)

    def test_truncation_respects_products(self):
        """Test multiplying then truncating equals truncating then multiplying."""
        f = Jet(tuple(Fraction(k + 1, k + 2) for k in range(6)))
        g = Jet(tuple(Fraction(3 - k, 2) for k in range(6)))
        for order in range(6):
            assert (f * g).truncate(order).coefficients == (f.truncate(order) * g.truncate(order)).coefficients

    def test_cos_is_derivative_of_sin(self):
        assert trig_jet("sin", 0, 0, 5).derivative().coefficients == trig_jet("cos", 0, 0, 4).coefficients

    def test_cos_is_derivative_of_sin_off_center(self):
        """Test the float jets about a nonzero center."""
        backend = FloatBackend(50)
        offset, center = backend.convert("0.2"), backend.convert("0.7")
        derivative = trig_jet("sin", offset, center, 6, backend).derivative()
        cos = trig_jet("cos", offset, center, 5, backend)
        assert all(backend.is_close(x, y) for x, y in zip(derivative.coefficients, cos.coefficients))

    def test_unknown_kind(self):
        with pytest.raises(InvalidQueryError):
            trig_jet("tan", 0, 0, 2)


class TestPolynomial:
    """Tests for polynomial helpers and rational functions."""

    def test_vandermonde_quotient(self):
        R = poly_ring(("z1", "z2"))
        z1, z2 = R.gens
        assert vandermonde_quotient(z2**2 - z1**2, ("z1", "z2")) == z1 + z2

    def test_vandermonde_quotient_not_divisible(self):
        R = poly_ring(("z1", "z2"))
        z1, _ = R.gens
        with pytest.raises(NotDivisibleError):
            vandermonde_quotient(z1, ("z1", "z2"))

    def test_vandermonde_orientation(self):
        """Test the product runs over z_j - z_i with i < j."""
        R = poly_ring(("z1", "z2", "z3"))
        v = vandermonde(R, ("z1", "z2", "z3"))
        assert evaluate(v, {"z1": 0, "z2": 1, "z3": 3}) == 1 * 3 * 2

    def test_permute_variables_swaps(self):
        R = poly_ring(("z1", "z2"))
        z1, z2 = R.gens
        assert permute_variables(z1**2 * z2, {0: 1, 1: 0}) == z2**2 * z1

    def test_evaluate(self):
        """Test evaluation at a rational point returns a Fraction."""
        R = poly_ring(("z1", "z2", "z3"))
        z1, z2, z3 = R.gens
        p = z1**2 * z2 - 3 * z3 + constant(R, Fraction(1, 2))
        value = evaluate(p, {"z3": Fraction(2, 3), "z1": Fraction(1, 2), "z2": 3})
        assert value == Fraction(-3, 4)
        assert isinstance(value, Fraction)

    def test_evaluate_one_variable(self):
        R = poly_ring(("w",))
        w = R.gens[0]
        assert evaluate(w**3 - 2 * w, {"w": Fraction(-1, 2)}) == Fraction(7, 8)

    def test_evaluate_needs_every_variable(self):
        R = poly_ring(("z1", "z2"))
        with pytest.raises(InvalidQueryError):
            evaluate(R.gens[0], {"z1": 1})

    def test_antisymmetrize_linear(self):
        R = poly_ring(("z1", "z2"))
        z1, z2 = R.gens
        f = antisymmetrize(RationalFn(z1), ("z1", "z2"))
        assert f.numerator == (z1 - z2) * constant(R, Fraction(1, 2))

    def test_antisymmetrize_budget(self):
        """Test the factorial budget bounds the variable count."""
        names = tuple(f"z{j}" for j in range(1, 5))
        R = poly_ring(names)
        with pytest.raises(BoundExceededError):
            antisymmetrize(R.gens[0], names, max_size=3)

    def test_rational_function_evaluation(self):
        R = poly_ring(("w",))
        w = R.gens[0]
        f = RationalFn(w**2, {w - 1: 2})
        assert f.evaluate({"w": 3}) == Fraction(9, 4)

    def test_antisymmetrize_is_idempotent(self):
        names = ("z1", "z2", "z3")
        R = poly_ring(names)
        z1, z2, z3 = R.gens
        f = antisymmetrize(RationalFn(z1**2 * z2 + 3 * z3, {z1 - 2: 1}), names)
        assert antisymmetrize(f, names) == f

    def test_zero_denominator_factor(self):
        R = poly_ring(("w",))
        with pytest.raises(SingularParameterError):
            RationalFn(R.one, {R.zero: 1})


class TestResidue:
    """Tests for iterated residues."""

    def test_simple_pole_at_zero(self):
        R = poly_ring(("z",))
        z = R.gens[0]
        assert iterated_residue(RationalFn(3 * z**2 + 2 * z + 7, {z: 3}), ["z"], [0]) == 3

    def test_double_pole_at_one(self):
        R = poly_ring(("w",))
        w = R.gens[0]
        assert iterated_residue(RationalFn(w**2, {w - 1: 2}), ["w"], [1]) == 2

    def test_regular_point_gives_zero(self):
        R = poly_ring(("w",))
        w = R.gens[0]
        assert iterated_residue(RationalFn(w, {w - 2: 1}), ["w"], [0]) == 0

    def test_geometric_partial_sum(self):
        """Test a pole at zero next to a simple pole at one."""
        # Res_{z=0} -h(z) / (z**r (z - 1)) sums the first r coefficients of h
        R = poly_ring(("z",))
        z = R.gens[0]
        h = 2 * z**2 + 3 * z + 2
        assert iterated_residue(RationalFn(-h, {z: 2, z - 1: 1}), ["z"], [0]) == 5

    def test_iterated_two_variables(self):
        R = poly_ring(("x", "y"))
        x, y = R.gens
        f = RationalFn(x + y, {x: 1, y: 1})
        assert iterated_residue(f, ["x", "y"], [0, 0]) == 0
        g = RationalFn(R.one, {x - y: 1, y - 1: 1})
        inner = residue_in(g, "x", 0)
        assert inner.is_zero

    @pytest.mark.parametrize("s", [2, 3])
    def test_order_of_integration_is_immaterial(self, s):
        """Test every variable order gives the same multiple residue at w = 1."""
        names = tuple(f"w{j}" for j in range(1, s + 1))
        R = poly_ring(names)
        ws = R.gens
        t, delta = constant(R, 2), constant(R, Fraction(1, 2))
        numerator = vandermonde(R, names)
        for i in range(s):
            for j in range(i + 1, s):
                numerator *= t**2 * ws[i] * ws[j] - 2 * delta * t * ws[i] + 1
            numerator *= ws[i] ** (i + 2) + ws[i]
        f = RationalFn(numerator, {w - 1: s for w in ws})
        expected = iterated_residue(f, names, [1] * s)
        for order in permutations(names):
            assert iterated_residue(f, list(order), [1] * s) == expected

    def test_mismatched_points(self):
        R = poly_ring(("z",))
        with pytest.raises(InvalidQueryError):
            iterated_residue(R.gens[0], ["z"], [0, 1])


class TestDet:
    """Tests for the fraction-free determinant."""

    def test_rational_matrix(self):
        assert det([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]) == -2

    def test_matches_cofactor_expansion(self):
        """Test DomainMatrix elimination against cofactor expansion."""
        rows = [[Fraction(i * i + 2 * j + 1, j + 1) for j in range(3)] for i in range(3)]
        assert det(rows) == cofactor_det(rows)

    def test_polynomial_matrix(self):
        R = poly_ring(("z",))
        z = R.gens[0]
        assert det([[z, R.one], [R.one, z]]) == z**2 - 1

    def test_not_square(self):
        with pytest.raises(InvalidQueryError):
            det([[Fraction(1), Fraction(2)]])

    def test_float_matrix(self):
        backend = FloatBackend(50)
        rows = [[backend.convert(2), backend.convert(1)], [backend.convert(1), backend.convert(3)]]
        assert backend.is_close(det(rows, backend), 5)
