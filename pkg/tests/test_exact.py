"""Tests for the exact combinatorial primitives."""
from fractions import Fraction

import pytest

from app.core.errors import InvalidInputError
from app.services.exact import (
    ZERO,
    MultiIndex,
    bernoulli,
    double_factorial,
    multi_binomial,
    multinomial,
    ordered_decompositions,
    partition_count,
    partitions,
    partitions_as_multi_indices,
    split_multiset,
)


def test_double_factorial_conventions():
    """Test (-1)!! = 0!! = 1 and a few odd values."""
    assert double_factorial(-1) == 1
    assert double_factorial(0) == 1
    assert double_factorial(5) == 15
    assert double_factorial(7) == 105
    assert double_factorial(6) == 48


def test_double_factorial_rejects_below_minus_one():
    """Test that k < -1 is rejected."""
    with pytest.raises(InvalidInputError):
        double_factorial(-3)


def test_multinomial():
    """Test multinomial coefficients and the zero case."""
    assert multinomial(4, [2, 1, 1]) == 12
    assert multinomial(3, [1, 1]) == 0
    assert multinomial(0, []) == 1


def test_bernoulli_values():
    """Test the first even Bernoulli numbers."""
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(6) == Fraction(1, 42)
    assert bernoulli(8) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_bernoulli_rejects_odd_index():
    """Test that odd or small indices are rejected."""
    with pytest.raises(InvalidInputError):
        bernoulli(3)
    with pytest.raises(InvalidInputError):
        bernoulli(0)


def test_multi_index_weight_and_length():
    """Test |b| and ||b|| of kappa_1^2 kappa_3."""
    b = MultiIndex({1: 2, 3: 1})
    assert b.weight == 5
    assert b.length == 3
    assert b.factorial() == 2
    assert b.parts() == (3, 1, 1)


def test_multi_index_equality_ignores_zero_entries():
    """Test that zero multiplicities are dropped."""
    assert MultiIndex({1: 1, 2: 0}) == MultiIndex.delta(1)
    assert hash(MultiIndex({1: 1, 2: 0})) == hash(MultiIndex.delta(1))
    assert not ZERO


def test_multi_index_arithmetic():
    """Test addition, subtraction and the componentwise order."""
    a = MultiIndex.from_parts([1, 1, 2])
    b = MultiIndex.delta(1)
    assert a - b == MultiIndex.from_parts([1, 2])
    assert b <= a
    assert not a <= b
    assert a + b == MultiIndex({1: 3, 2: 1})
    with pytest.raises(InvalidInputError):
        b - a


def test_multi_index_rejects_bad_index():
    """Test that kappa indices start at 1."""
    with pytest.raises(InvalidInputError):
        MultiIndex({0: 1})


def test_splittings_cover_every_sub_index():
    """Test that splittings of 2*k1 + k2 have binomial weights summing to 2^3."""
    b = MultiIndex({1: 2, 2: 1})
    splits = list(b.splittings())
    assert len(splits) == 6
    assert sum(weight for _, _, weight in splits) == 8
    for low, high, _ in splits:
        assert low + high == b


def test_multi_binomial():
    """Test the product of multinomials over indices."""
    m = MultiIndex({1: 2, 2: 1})
    assert multi_binomial(m, [MultiIndex.delta(1), MultiIndex({1: 1, 2: 1})]) == 2
    with pytest.raises(InvalidInputError):
        multi_binomial(m, [MultiIndex.delta(1)])


def test_ordered_decompositions_count():
    """Test ordered decompositions of 2*k1 into nonzero parts."""
    m = MultiIndex.delta(1, 2)
    assert ordered_decompositions(m, 1) == [(m,)]
    assert ordered_decompositions(m, 2) == [(MultiIndex.delta(1), MultiIndex.delta(1))]
    assert ordered_decompositions(m, 3) == []


def test_partition_count():
    """Test p(n) against the known values."""
    expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297]
    assert [partition_count(n) for n in range(18)] == expected
    assert partition_count(100) == 190569292


def test_partitions_order():
    """Test that partitions come largest part first."""
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(partitions(0)) == [()]


def test_partitions_as_multi_indices_sorted():
    """Test the multiplicity-vector order used for Faber matrix labels."""
    labels = partitions_as_multi_indices(3)
    assert [mi.multiplicity_vector(3) for mi in labels] == [(0, 0, 1), (1, 1, 0), (3, 0, 0)]


def test_split_multiset_weights():
    """Test that equal labels are merged with binomial multiplicities."""
    splits = {(left, right): weight for left, right, weight in split_multiset((0, 0, 1))}
    assert splits[((0,), (0, 1))] == 2
    assert splits[((), (0, 0, 1))] == 1
    assert sum(splits.values()) == 8
