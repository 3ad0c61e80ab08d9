"""Tests for the Faber intersection matrices."""
from fractions import Fraction

import pytest

from app.core.errors import InvalidInputError, VerificationError
from app.services.exact import MultiIndex, partition_count
from app.services.fabering import (
    block_sum,
    exact_rank,
    faber_entry,
    faber_matrix,
    faber_relation_coefficient,
    rank_profile,
)


def test_block_sum():
    """Test set partitions of kappa_1^2 into one and two blocks."""
    m = MultiIndex.delta(1, 2)
    assert block_sum(m, 1) == Fraction(1, 15)
    assert block_sum(m, 2) == Fraction(1, 9)
    assert block_sum(m, 3) == 0


def test_genus_four_entries():
    """Test kappa_1^2 = 32/3 kappa_2 in genus four."""
    k1, k2 = MultiIndex.delta(1), MultiIndex.delta(2)
    assert faber_entry(4, k1, k1) == 512
    assert faber_entry(4, MultiIndex({}), k2) == 48
    assert faber_relation_coefficient(4, k2) == 1
    assert faber_relation_coefficient(4, MultiIndex.delta(1, 2)) == Fraction(32, 3)


def test_entry_rejects_wrong_degree():
    """Test that |L| + |L'| must equal g - 2."""
    with pytest.raises(InvalidInputError):
        faber_entry(4, MultiIndex.delta(1), MultiIndex({}))
    with pytest.raises(InvalidInputError):
        faber_matrix(4, 3)


def test_matrix_shape():
    """Test that V_g^k is p(k) by p(g - 2 - k)."""
    rows, cols, matrix = faber_matrix(10, 3)
    assert len(rows) == partition_count(3)
    assert len(cols) == partition_count(5)
    assert len(matrix) == len(rows)
    assert all(len(row) == len(cols) for row in matrix)


def test_exact_rank():
    """Test Bareiss rank on small rational matrices."""
    assert exact_rank([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3), Fraction(2)]]) == 1
    assert exact_rank([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == 3
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert exact_rank([[0, 1], [0, 2], [1, 0]]) == 2
    assert exact_rank([]) == 0


def test_rank_profiles_match_table(faber_ranks):
    """Test the computed rank profiles against the published table up to genus 12."""
    for g in range(2, 13):
        profile, total = rank_profile(g)
        assert profile == faber_ranks[g]
        assert total == sum(faber_ranks[g])


def test_rank_profile_rejects_small_genus():
    """Test g >= 2."""
    with pytest.raises(InvalidInputError):
        rank_profile(1)


def test_genus_two_rank():
    """Test V_2^0 is the 1 x 1 matrix [1] and R_2 = 1."""
    empty = MultiIndex({})
    assert faber_entry(2, empty, empty) == 1
    assert faber_relation_coefficient(2, empty) == Fraction(1, 2)
    rows, cols, matrix = faber_matrix(2, 0)
    assert rows == cols == [empty]
    assert matrix == [[1]]
    assert rank_profile(2) == ([1], 1)


def test_zero_rank_is_reported(monkeypatch):
    """Test that a rank-zero Faber matrix raises instead of producing an empty profile."""
    monkeypatch.setattr("app.services.fabering.exact_rank", lambda matrix: 0)
    with pytest.raises(VerificationError):
        rank_profile(3)
