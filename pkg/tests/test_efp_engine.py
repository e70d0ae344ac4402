"""Unit tests for the emptiness formation probability routes."""

from fractions import Fraction

import pytest

from dwbc.errors import InvalidQueryError, SingularParameterError
from dwbc.model import Lattice, VertexWeights
from dwbc.efp_engine import (
    ROUTES,
    EfpQuery,
    efp_double,
    efp_from_row_sum,
    efp_rep1,
    efp_rep2,
    efp_routes,
    phi_s_at_ones,
    u_of_z,
)
from dwbc.oracle import efp_oracle

ICE = VertexWeights.ice_point()


def _oracle(q: EfpQuery) -> Fraction:
    return efp_oracle(q.n, q.r, q.s, Lattice.homogeneous(q.weights, q.n))


def test_u_of_z():
    """Test u(z) at two points."""
    assert u_of_z(Fraction(2), Fraction(1), Fraction(1, 2)) == -1
    assert u_of_z(Fraction(1), Fraction(3), Fraction(1, 4)) == 0


def test_u_of_z_pole():
    # kappa = 1 - 2 * 1 = -1, pole at z = 1
    with pytest.raises(SingularParameterError):
        u_of_z(Fraction(1), Fraction(1), Fraction(1))


class TestPhiAtOnes:
    """Tests for the w-lemma function at w = 1."""

    def test_single_variable(self):
        assert phi_s_at_ones(1, Fraction(1), Fraction(1, 2), [Fraction(3)]) == Fraction(-1, 2)
        assert phi_s_at_ones(1, Fraction(2), Fraction(1, 3), [Fraction(1, 2)]) == 2

    @pytest.mark.parametrize("z", [[Fraction(3), Fraction(5)], [Fraction(-1, 2), Fraction(2, 3)]])
    def test_independent_of_spread(self, z):
        """Test the result does not depend on the auxiliary spread."""
        t, delta = Fraction(1, 2), Fraction(1, 4)
        first = phi_s_at_ones(2, t, delta, z, spread=(1, 2))
        second = phi_s_at_ones(2, t, delta, z, spread=(1, 3))
        assert first == second

    def test_pole(self):
        with pytest.raises(SingularParameterError):
            phi_s_at_ones(2, Fraction(1), Fraction(1, 2), [Fraction(2), Fraction(1, 2)])

    def test_spread_must_be_distinct(self):
        with pytest.raises(InvalidQueryError):
            phi_s_at_ones(2, Fraction(1), Fraction(1, 2), [Fraction(3), Fraction(5)], spread=(1, 1))

    def test_wrong_number_of_values(self):
        with pytest.raises(InvalidQueryError):
            phi_s_at_ones(2, Fraction(1), Fraction(1, 2), [Fraction(3)])


class TestEfpQuery:
    """Tests for EfpQuery validation."""

    @pytest.mark.parametrize("n,r,s", [(3, 0, 1), (3, 4, 1), (3, 1, 0), (3, 1, 4), (0, 1, 1)])
    def test_out_of_range(self, n, r, s):
        """Test r and s outside 1..N are refused."""
        with pytest.raises(InvalidQueryError):
            EfpQuery(n, r, s, ICE)

    def test_str(self):
        assert str(EfpQuery(3, 2, 1, ICE)) == "N=3 r=2 s=1"


class TestRoutes:
    """Tests for the five EFP routes."""

    def test_ice_point_one_row(self):
        """Test s = 1 on the 3x3 ice lattice."""
        assert efp_rep1(EfpQuery(3, 2, 1, ICE)) == Fraction(5, 7)

    @pytest.mark.parametrize(
        "q",
        [
            EfpQuery(3, 2, 1, ICE),
            EfpQuery(3, 2, 2, ICE),
            EfpQuery(3, 2, 2, VertexWeights.rational(2, 1, 2)),
            EfpQuery(4, 3, 2, VertexWeights.rational(3, 2, 2)),
        ],
        ids=str,
    )
    def test_routes_agree(self, q):
        """Test every route matches the oracle."""
        expected = _oracle(q)
        assert efp_from_row_sum(q) == expected
        assert efp_rep1(q) == expected
        assert efp_rep2(q) == expected
        assert efp_double(q) == expected

    @pytest.mark.slow
    def test_three_rows(self):
        q = EfpQuery(4, 3, 3, ICE)
        values = efp_routes(q)
        assert len(set(values.values())) == 1

    def test_full_width_is_certain(self):
        """Test r = N gives probability one."""
        weights = VertexWeights.rational(2, 1, 2)
        for s in (1, 2, 3):
            values = efp_routes(EfpQuery(3, 3, s, weights))
            assert all(value == 1 for value in values.values())

    def test_too_narrow_is_impossible(self):
        """Test r < s gives probability zero."""
        values = efp_routes(EfpQuery(3, 1, 2, ICE), ("oracle", "row-sum", "rep1"))
        assert values == {"oracle": 0, "row-sum": 0, "rep1": 0}

    def test_subset_of_routes(self):
        values = efp_routes(EfpQuery(3, 2, 1, ICE), ("oracle", "double"))
        assert list(values) == ["oracle", "double"]
        assert values["oracle"] == values["double"] == Fraction(5, 7)

    def test_unknown_route(self):
        with pytest.raises(InvalidQueryError):
            efp_routes(EfpQuery(2, 1, 1, ICE), ("oracle", "contour"))

    def test_route_names(self):
        assert ROUTES == ("oracle", "row-sum", "rep1", "rep2", "double")


@pytest.mark.parametrize("s", [1, 2, 3])
def test_nondecreasing_in_r(s):
    """Test F grows with r up to one."""
    weights = VertexWeights.rational(2, 1, 2)
    values = [efp_from_row_sum(EfpQuery(4, r, s, weights)) for r in range(1, 5)]
    assert values == sorted(values)
    assert values[-1] == 1
    assert all(0 <= value <= 1 for value in values)
