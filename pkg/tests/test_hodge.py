"""Tests for Hodge integrals, ELSV and the closed forms."""
from fractions import Fraction

import pytest

from app.core.errors import InvalidInputError, UnstableModuliError
from app.services.descendent import psi_correlator
from app.services.exact import MultiIndex
from app.services.hodge import (
    ch_reduce,
    closed_formula_oracle,
    elsv_hurwitz,
    fa2_check,
    hodge_integral,
    hurwitz_number,
    kappa_to_psi,
    kl_invert,
    lambda_to_ch,
    lx6_identity_check,
    lx6_sides,
)
from app.services.polynomials import exponent_vectors


def test_kappa_to_psi_single():
    """Test kappa_1 becomes one tau_2 insertion."""
    assert kappa_to_psi(MultiIndex.delta(1)) == [(Fraction(1), (2,))]
    assert kappa_to_psi(MultiIndex({})) == [(Fraction(1), ())]


def test_lambda_to_ch():
    """Test lambda_1 = ch_1 and lambda_2 = ch_1^2 / 2."""
    assert lambda_to_ch((1,)) == [(Fraction(1), (1,))]
    assert lambda_to_ch((2,)) == [(Fraction(1, 2), (1, 1))]
    with pytest.raises(InvalidInputError):
        lambda_to_ch((-1,))


def test_mumford_reduction_genus_one():
    """Test <tau_0 ch_1>_1 = <tau_0 lambda_1>_1 = 1/24."""
    assert ch_reduce(1, (0,), (1,)) == Fraction(1, 24)
    assert hodge_integral(1, psi=(0,), lambdas=(1,)) == Fraction(1, 24)
    with pytest.raises(InvalidInputError):
        ch_reduce(1, (0,), (2,))


def test_genus_two_lambda_monomials():
    """Test int lambda_1^3 = 1/2880 and int lambda_1 lambda_2 = 1/5760 over the genus two moduli space."""
    assert hodge_integral(2, lambdas=(1, 1, 1)) == Fraction(1, 2880)
    assert hodge_integral(2, lambdas=(2, 1)) == Fraction(1, 5760)


def test_kappa_integral():
    """Test <tau_0 kappa_1>_1 = <tau_0 tau_2>_1."""
    value = hodge_integral(1, psi=(0,), kappa=MultiIndex.delta(1))
    assert value == psi_correlator(1, (0, 2)) == Fraction(1, 24)


def test_off_dimension_is_zero():
    """Test that the degree constraint is enforced."""
    assert hodge_integral(2, lambdas=(1, 1)) == 0
    assert hodge_integral(1, psi=(0,), lambdas=(2,)) == 0


def test_lambda_g_formula():
    """Test <tau_d lambda_g>_g through the pipeline and in closed form."""
    assert closed_formula_oracle("lg", 1, (0,)) == Fraction(1, 24)
    assert closed_formula_oracle("lg", 2, (2,)) == Fraction(7, 5760)
    for d in [(2,), (3, 0), (2, 1), (2, 1, 1)]:
        assert hodge_integral(2, psi=d, lambdas=(2,)) == closed_formula_oracle("lg", 2, d)


def test_lambda_g_lambda_g_minus_one_formula():
    """Test <tau_d lambda_g lambda_{g-1}>_g against its closed value."""
    for g, d in [(2, ()), (2, (1,)), (2, (1, 1)), (3, (2,)), (3, (1, 2))]:
        lhs, rhs = fa2_check(g, d)
        assert lhs == rhs
    assert closed_formula_oracle("l2g", 2, ()) == Fraction(1, 5760)


def test_lambda_cubed_formula():
    """Test <lambda_{g-1}^3>_g in closed form and through the pipeline."""
    assert closed_formula_oracle("l3g", 2) == Fraction(1, 2880)
    assert hodge_integral(3, lambdas=(2, 2, 2)) == closed_formula_oracle("l3g", 3)


def test_closed_formula_rejects_bad_input():
    """Test degree checks and unknown formulas."""
    with pytest.raises(InvalidInputError):
        closed_formula_oracle("lg", 2, (1,))
    with pytest.raises(InvalidInputError):
        closed_formula_oracle("l3g", 1)
    with pytest.raises(InvalidInputError):
        closed_formula_oracle("l4g", 2)


def test_elsv_small_cases():
    """Test H_{1,(1)} = 0, H_{1,(2)} = 1/2 and H_{0,(1,1,1)} = 4."""
    assert elsv_hurwitz(1, (1,)) == 0
    assert elsv_hurwitz(1, (2,)) == Fraction(1, 2)
    assert hurwitz_number(0, (1, 1, 1)) == 4
    assert elsv_hurwitz(0, (1, 1, 1)) == 24


def test_elsv_rejects_unstable():
    """Test that ELSV needs a stable (g, l(mu))."""
    with pytest.raises(UnstableModuliError):
        elsv_hurwitz(0, (3,))
    with pytest.raises(InvalidInputError):
        elsv_hurwitz(1, (0,))


def test_hurwitz_inversion():
    """Test that Hurwitz numbers give back the psi correlators."""
    assert kl_invert(1, (1,)) == Fraction(1, 24)
    for g, d in [(0, (1, 0, 0, 0)), (1, (1, 1)), (2, (4,))]:
        assert kl_invert(g, d) == psi_correlator(g, d)
    with pytest.raises(InvalidInputError):
        kl_invert(1, (2,))


def test_ch_identity_genus_two():
    """Test that at g = 2 the ch_1 side equals the lambda side."""
    for d in [(3,), (2, 2), (1, 3)]:
        first, second, third = lx6_sides(2, d)
        assert first == second
        assert isinstance(third, Fraction)


def test_ch_identity_hypotheses():
    """Test the ch_{2g-3} identity rejects inputs outside its range."""
    with pytest.raises(InvalidInputError):
        lx6_identity_check(1, (2,))
    with pytest.raises(InvalidInputError):
        lx6_identity_check(2, (0, 4))
    with pytest.raises(InvalidInputError):
        lx6_sides(2, (2,))


def test_l2g_formula_on_its_domain():
    """Test the lambda_g lambda_{g-1} closed form on every d with d_j >= 1, up to genus three."""
    checked = 0
    for g in (2, 3):
        for n in range(0, 4):
            for d in exponent_vectors(n, g - 2):
                d = tuple(x + 1 for x in d)
                assert hodge_integral(g, psi=d, lambdas=(g, g - 1)) == closed_formula_oracle("l2g", g, d)
                checked += 1
    assert checked > 5


def test_l2g_and_l3g_reject_out_of_domain():
    """Test that zero exponents and extra points are refused."""
    with pytest.raises(InvalidInputError):
        closed_formula_oracle("l2g", 1, (2, 0, 0))
    with pytest.raises(InvalidInputError):
        closed_formula_oracle("l2g", 2, (2, 0))
    with pytest.raises(InvalidInputError):
        fa2_check(3, (3, 0))
    with pytest.raises(InvalidInputError):
        closed_formula_oracle("l3g", 2, (1,))
    assert hodge_integral(1, psi=(2, 0, 0), lambdas=(1,)) == Fraction(1, 24)
