"""Tests for n-point functions."""
from fractions import Fraction

import pytest

from app.core.errors import InvalidInputError, UnstableModuliError
from app.services.descendent import psi_correlator
from app.services.npoint import (
    coeff_theorem_check,
    lab_closed_value,
    lx1_check,
    lx2_check,
    npoint_F,
    npoint_F_via_K,
    npoint_G,
    three_point_closed,
    two_point_closed,
    virtual_correlator,
    wmb_count,
    wmb_F,
)
from app.services.polynomials import SymPoly, exponent_vectors


def test_one_point_function():
    """Test F_g(x) = x^{3g-2}/(24^g g!)."""
    assert npoint_F(1, 1).coefficient((1,)) == Fraction(1, 24)
    assert npoint_F(2, 1).coefficient((4,)) == Fraction(1, 1152)
    assert npoint_G(1, 1) == 0


def test_two_point_genus_one():
    """Test G_1(x, y) = xy/12 and F_1(x, y) = (x^2 + xy + y^2)/24."""
    x, y = SymPoly.variable(0, 2), SymPoly.variable(1, 2)
    assert npoint_G(1, 2) == x * y / 12
    assert npoint_F(1, 2) == (x * x + x * y + y * y) / 24


def test_genus_zero_three_point():
    """Test F_0(x, y, z) = 1."""
    assert npoint_F(0, 3) == 1


def test_coefficients_are_correlators():
    """Test every coefficient of F_2 in two variables against DVV."""
    F = npoint_F(2, 2)
    for d in exponent_vectors(2, 5):
        assert F.coefficient(d) == psi_correlator(2, d)
    assert F.coefficient((3, 2)) == Fraction(29, 5760)


def test_routes_agree():
    """Test the sum, recursion and kernel routes."""
    for g, n in [(1, 3), (2, 2), (2, 3), (3, 2)]:
        assert npoint_G(g, n, "sum") == npoint_G(g, n, "recursion")
        assert npoint_F(g, n) == npoint_F_via_K(g, n)


def test_symmetric_and_homogeneous():
    """Test the shape of G_g."""
    G = npoint_G(2, 3)
    assert G.is_symmetric()
    assert G.is_homogeneous(3 * 2 + 3 - 3)


def test_dijkgraaf_two_point():
    """Test (x + y) G_g(x, y) against the closed two-point summands."""
    x_plus_y = SymPoly.sum_of_vars(2)
    closed = two_point_closed(11)
    for g in range(1, 5):
        assert npoint_G(g, 2) * x_plus_y == closed[g]


def test_zagier_three_point():
    """Test G_g(x, y, z) against the closed three-point function."""
    closed = three_point_closed(9)
    for g in range(4):
        assert npoint_G(g, 3) == closed[g]


def test_tree_expansion():
    """Test F_g recovered from weighted marked binary trees."""
    assert wmb_F(1, 1) == npoint_F(1, 1)
    assert wmb_F(0, 3) == npoint_F(0, 3)
    assert wmb_F(1, 2) == npoint_F(1, 2)
    assert wmb_count(0, 3) == 3


@pytest.mark.parametrize("g, n, count", [(0, 3, 3), (0, 4, 15), (1, 2, 3), (2, 2, 6)])
def test_tree_counts(g, n, count):
    """Test the number of weighted marked binary trees."""
    assert wmb_count(g, n) == count


def test_coefficient_theorem():
    """Test the three coefficient families of G_g(z, x_1, ..., x_n)."""
    for g in range(3):
        for n in range(1, 4):
            if 2 * g - 1 + n <= 0:
                continue
            for case in ("i", "ii", "iii"):
                assert coeff_theorem_check(g, n, case)


def test_coefficient_theorem_single_vector():
    """Test case (iii) at one vector, where a = 1."""
    assert coeff_theorem_check(1, 2, "iii", d=(2, 0))
    with pytest.raises(InvalidInputError):
        coeff_theorem_check(1, 2, "ii", d=(2, 0))
    with pytest.raises(InvalidInputError):
        coeff_theorem_check(1, 2, "iv")


def test_unstable_rejected():
    """Test that unstable (g, n) raise UnstableModuliError."""
    with pytest.raises(UnstableModuliError):
        npoint_G(0, 2)
    with pytest.raises(UnstableModuliError):
        npoint_F(0, 1)


def test_unknown_route_rejected():
    """Test that an unknown route is rejected."""
    with pytest.raises(InvalidInputError):
        npoint_G(1, 2, "magic")


def test_virtual_correlator():
    """Test the genus-zero one- and two-point extensions."""
    assert virtual_correlator(0, (-2,)) == 1
    assert virtual_correlator(0, (2, -3)) == 1
    assert virtual_correlator(0, (1, -2)) == -1
    assert virtual_correlator(0, (0, -1)) == 1
    assert virtual_correlator(1, (1,)) == Fraction(1, 24)
    assert virtual_correlator(1, (-1, 2, 2)) == 0


def test_lab_closed_value():
    """Test the closed L^{2,2} coefficient at g = 0, n = 1."""
    assert lab_closed_value(0, (1,)) == Fraction(2)
    with pytest.raises(InvalidInputError):
        lab_closed_value(1, (0,))


def test_alternating_sums_vanish():
    """Test the alternating two-point sum for k > g and the convolution identity."""
    lhs, rhs = lx2_check(1, k=2, extra=(0, 0))
    assert lhs == rhs == 0
    lhs, rhs = lx1_check(1, 1, p=(1,), q=(1,))
    assert lhs == rhs == 0
    with pytest.raises(InvalidInputError):
        lx2_check(2, k=1)


def test_alternating_sum_chern_character():
    """Test the genus-one Chern character form: 1/2 <tau_0^3>_0 = 12 <tau_0 ch_1>_1."""
    lhs, rhs = lx2_check(1, extra=(0,))
    assert lhs == rhs == Fraction(1, 2)
