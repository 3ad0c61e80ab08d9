"""Tests for descendent integrals."""
from fractions import Fraction

import pytest

from app.core.errors import InvalidInputError, UnstableModuliError
from app.services.descendent import (
    dilaton_reduce,
    dvv_expand,
    effective_recursion,
    evaluate,
    genus0_closed,
    kdv_identity_check,
    psi_correlator,
    string_reduce,
)


def test_initial_values():
    """Test <tau_0^3>_0 = 1 and <tau_1>_1 = 1/24."""
    assert psi_correlator(0, (0, 0, 0)) == 1
    assert psi_correlator(1, (1,)) == Fraction(1, 24)


def test_known_values():
    """Test a handful of classical genus 2 and 3 numbers."""
    assert psi_correlator(2, (4,)) == Fraction(1, 1152)
    assert psi_correlator(2, (2, 3)) == Fraction(29, 5760)
    assert psi_correlator(2, (2, 2, 2)) == Fraction(7, 240)
    assert psi_correlator(3, (7,)) == Fraction(1, 82944)


def test_dimension_mismatch_is_zero():
    """Test that off-dimension correlators vanish."""
    assert psi_correlator(0, (0, 0, 1)) == 0
    assert psi_correlator(1, (2,)) == 0


def test_unstable_is_zero():
    """Test that unstable (g, n) gives 0 rather than an error."""
    assert psi_correlator(0, (0, 0)) == 0
    assert psi_correlator(0, ()) == 0


def test_permutation_invariance():
    """Test that the order of insertions does not matter."""
    assert psi_correlator(2, (3, 2)) == psi_correlator(2, (2, 3))
    assert psi_correlator(1, (0, 3, 1)) == psi_correlator(1, (3, 1, 0))


def test_string_and_dilaton():
    """Test the string and dilaton equations directly."""
    assert string_reduce(1, (2, 0)) == Fraction(1, 24)
    assert dilaton_reduce(2, (1, 4)) == 3 * psi_correlator(2, (4,))
    assert psi_correlator(2, (1, 4)) == Fraction(1, 384)


def test_string_rejects_unstable_target():
    """Test that the string equation refuses an unstable remainder."""
    with pytest.raises(UnstableModuliError):
        string_reduce(0, (0, 0))


def test_dvv_expand_matches_value():
    """Test that the explicit DVV terms sum to the correlator."""
    terms = dvv_expand(2, (4,))
    assert terms
    assert evaluate(terms) == Fraction(1, 1152)


def test_dvv_expand_needs_positive_index():
    """Test that DVV needs some d_i >= 1."""
    with pytest.raises(InvalidInputError):
        dvv_expand(0, (0, 0, 0))


def test_genus0_closed():
    """Test the genus-zero multinomial formula."""
    assert genus0_closed((1, 1, 0, 0, 0)) == 2
    assert genus0_closed((2, 0, 0, 0, 0)) == 1
    assert genus0_closed((1, 0, 0)) == 0
    with pytest.raises(UnstableModuliError):
        genus0_closed((0, 0))


def test_effective_recursion_agrees_with_dvv():
    """Test the genus-lowering recursion against DVV up to 3g - 3 + n = 7."""
    for d in [(4,), (3, 2), (2, 2, 2), (2, 1, 1, 0), (7,), (4, 3, 0, 0), (2, 2, 2, 1, 1)]:
        g = (sum(d) - len(d) + 3) // 3
        assert effective_recursion(g, d) == psi_correlator(g, d)


def test_kdv_identity():
    """Test the KdV coefficient identity with and without passengers."""
    for g in range(3):
        for n in range(1, 3 * g + 3):
            lhs, rhs = kdv_identity_check(g, n)
            assert lhs == rhs
    lhs, rhs = kdv_identity_check(1, 2, extra=(1, 2))
    assert lhs == rhs


def test_kdv_identity_rejects_n_zero():
    """Test that the KdV identity needs n >= 1."""
    with pytest.raises(InvalidInputError):
        kdv_identity_check(1, 0)
