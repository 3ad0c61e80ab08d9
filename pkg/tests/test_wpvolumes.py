"""Tests for higher Weil-Petersson volumes."""
from fractions import Fraction

import pytest

from app.core.errors import InvalidInputError, UnstableModuliError
from app.services.exact import ZERO, MultiIndex
from app.services.wpvolumes import (
    alpha,
    alpha_relation,
    evaluate_mixed,
    kappa_psi_correlator,
    kappa_psi_exchange,
    volume,
    wp_mixed,
    wp_n0_reduce,
    wp_volume,
)


def test_alpha_values():
    """Test alpha on kappa_1 powers and single kappa_l."""
    assert alpha(ZERO) == 1
    assert alpha(MultiIndex.delta(1)) == Fraction(1, 3)
    assert alpha(MultiIndex.delta(1, 2)) == Fraction(7, 45)
    assert alpha(MultiIndex.delta(1, 3)) == Fraction(31, 315)
    assert alpha(MultiIndex.delta(2)) == Fraction(1, 15)
    assert alpha(MultiIndex.delta(3)) == Fraction(1, 105)


def test_alpha_relation_vanishes():
    """Test the defining relation of alpha for nonzero indices."""
    for b in [MultiIndex.delta(1), MultiIndex.delta(1, 2), MultiIndex({1: 1, 2: 1}), MultiIndex({1: 2, 3: 1})]:
        assert alpha_relation(b) == 0


def test_initial_values():
    """Test <tau_0 kappa_1>_1 = 1/24 and V_{0,4}(kappa_1) = 1."""
    assert kappa_psi_correlator(1, MultiIndex.delta(1), (0,)) == Fraction(1, 24)
    assert wp_volume(0, 4, MultiIndex.delta(1)) == 1
    assert wp_volume(0, 3, ZERO) == 1


def test_volume_routes_agree():
    """Test the volume recursion against kappa removal."""
    cases = [(1, 1, MultiIndex.delta(1)), (0, 5, MultiIndex.delta(1, 2)), (1, 2, MultiIndex({1: 2})), (1, 3, MultiIndex({1: 1, 2: 1}))]
    for g, n, b in cases:
        assert volume(g, n, b) == volume(g, n, b, "kappa")
    assert volume(0, 5, MultiIndex.delta(1, 2)) == 5


def test_genus_two_closed_volume():
    """Test <kappa_1^3>_2 = 43/2880 by both closed routes."""
    b = MultiIndex.delta(1, 3)
    assert volume(2, 0, b, "kappa") == Fraction(43, 2880)
    assert volume(2, 0, b) == Fraction(43, 2880)
    assert volume(2, 0, MultiIndex.delta(3)) == Fraction(1, 1152)


def test_off_degree_is_zero():
    """Test the degree constraint |b| + sum d = 3g - 3 + n."""
    assert wp_volume(1, 1, MultiIndex.delta(1, 2)) == 0
    assert wp_mixed(1, MultiIndex.delta(2), (0,)) == 0


def test_exchange_psi_for_kappa():
    """Test trading the last psi for a kappa class."""
    terms = kappa_psi_exchange(1, (0, 2))
    assert evaluate_mixed(terms) == Fraction(1, 24)
    assert evaluate_mixed(kappa_psi_exchange(1, (1, 1))) == Fraction(1, 24)


def test_exchange_rejects_unstable_target():
    """Test that <tau_d>_1 with one point cannot be exchanged."""
    with pytest.raises(UnstableModuliError):
        kappa_psi_exchange(1, (2,))
    with pytest.raises(InvalidInputError):
        kappa_psi_exchange(1, (2, 0))


def test_invalid_arguments():
    """Test the argument guards of the recursions."""
    with pytest.raises(InvalidInputError):
        wp_n0_reduce(1, MultiIndex.delta(1))
    with pytest.raises(InvalidInputError):
        wp_mixed(1, ZERO, ())
    with pytest.raises(InvalidInputError):
        wp_volume(2, 0, MultiIndex.delta(3))
    with pytest.raises(InvalidInputError):
        volume(1, 1, MultiIndex.delta(1), "nope")
