"""Faber intersection matrix services (pure business logic).

Rows of V_g^k are kappa monomials of degree k, columns those of degree
g - 2 - k; every entry is the top pairing <kappa(L + L')>, written through
kappa_{g-2}. The entry depends only on L + L', so values are memoized on the sum.
"""
import logging
from fractions import Fraction
from math import comb, factorial, lcm
from typing import List, Sequence, Tuple

from app.core.cache import memo_table
from app.core.errors import InvalidInputError, VerificationError
from app.services.exact import MultiIndex, double_factorial, partitions_as_multi_indices

logger = logging.getLogger(__name__)

Matrix = List[List[Fraction]]

_blocks = memo_table("faber_blocks")
_entries = memo_table("faber")


def _block_weight(block: MultiIndex) -> Fraction:
    return Fraction(1, double_factorial(2 * block.weight + 1))


def block_sum(m: MultiIndex, r: int) -> Fraction:
    """Sum over set partitions of the ||m|| labeled kappa factors into r blocks of prod 1/(2|B|+1)!!.

    The block holding one factor of the smallest index is chosen first; the
    remaining factors are split recursively.
    """
    if r < 1 or r > m.length:
        return Fraction(1) if (r == 0 and not m) else Fraction(0)
    key = (m.key(), r)
    cached = _blocks.get(key)
    if cached is not None:
        return cached
    first = m.entries[0][0]
    total = Fraction(0)
    for block in m.sub_indices():
        if block[first] < 1:
            continue
        ways = comb(m[first] - 1, block[first] - 1)
        for i, mult in m:
            if i != first:
                ways *= comb(mult, block[i])
        rest = m - block
        tail = block_sum(rest, r - 1)
        if tail:
            total += ways * _block_weight(block) * tail
    return _blocks.put(key, total)


def _entry_for_sum(g: int, m: MultiIndex) -> Fraction:
    key = (g, m.key())
    cached = _entries.get(key)
    if cached is not None:
        return cached
    size = m.length
    total = Fraction(0)
    # r = 0 survives only for the empty monomial (g = 2), where block_sum is 1
    for r in range(size + 1):
        sign = -1 if (size - r) % 2 else 1
        total += sign * factorial(2 * g - 3 + r) * block_sum(m, r)
    return _entries.put(key, total)


def faber_entry(g: int, L: MultiIndex, Lp: MultiIndex) -> Fraction:
    """Return the (L, L') entry of the Faber intersection matrix V_g^k.

    Formula:
        sum_{r=0}^{||m||} (-1)^{||m||-r}/r! sum_{m = m_1+...+m_r, m_i != 0}
            binom(m; m_1, ..., m_r) (2g-3+r)! / prod (2|m_j|+1)!!      with m = L + L'

    The ordered sum over (m_1, ..., m_r) divided by r! equals the sum over
    set partitions of the labeled factors of m. The r = 0 term is nonzero only
    for m = 0, the single entry of V_2^0.

    Raises:
        InvalidInputError: If |L| + |L'| != g - 2
    """
    if g < 2 or L.weight + Lp.weight != g - 2:
        raise InvalidInputError(
            "Faber entry needs |L| + |L'| = g - 2",
            details=[f"g={g}", f"|L|={L.weight}", f"|L'|={Lp.weight}"],
        )
    return _entry_for_sum(g, L + Lp)


def faber_relation_coefficient(g: int, m: MultiIndex) -> Fraction:
    """The constant c with kappa(m) = c * kappa_{g-2} in the top tautological degree.

    Raises:
        InvalidInputError: If |m| != g - 2
    """
    if g < 2 or m.weight != g - 2:
        raise InvalidInputError(f"relation coefficient needs |m| = g - 2 = {g - 2}, got |m| = {m.weight}")
    return _entry_for_sum(g, m) / double_factorial(2 * g - 2)


def faber_matrix(g: int, k: int) -> Tuple[List[MultiIndex], List[MultiIndex], Matrix]:
    """V_g^k with its row and column labels.

    Raises:
        InvalidInputError: If k is outside 0..g-2
    """
    if g < 2 or not 0 <= k <= g - 2:
        raise InvalidInputError(f"Faber matrix needs g >= 2 and 0 <= k <= g - 2, got g={g}, k={k}")
    rows = partitions_as_multi_indices(k)
    cols = partitions_as_multi_indices(g - 2 - k)
    return rows, cols, [[_entry_for_sum(g, L + Lp) for Lp in cols] for L in rows]


def _integer_rows(matrix: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    result = []
    for row in matrix:
        scale = lcm(1, *(Fraction(x).denominator for x in row))
        result.append([int(Fraction(x) * scale) for x in row])
    return result


def exact_rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Rows are scaled to integers first; every division in the sweep is exact.
    """
    rows = _integer_rows(matrix)
    if not rows or not rows[0]:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    previous = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot_row = next((r for r in range(rank, nrows) if rows[r][col]), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for r in range(rank + 1, nrows):
            factor = rows[r][col]
            for c in range(col + 1, ncols):
                rows[r][c] = (pivot * rows[r][c] - factor * rows[rank][c]) // previous
            rows[r][col] = 0
        previous = pivot
        rank += 1
    return rank


def rank_profile(g: int) -> Tuple[List[int], int]:
    """Return ([R_g^0, ..., R_g^{g-2}], R_g).

    V_g^{g-2-k} is the transpose of V_g^k, so only k <= (g - 2)/2 is eliminated.

    Raises:
        InvalidInputError: If g < 2
        VerificationError: If some V_g^k comes out with rank 0
    """
    if g < 2:
        raise InvalidInputError(f"rank profile needs g >= 2, got {g}")
    half = []
    for k in range((g - 2) // 2 + 1):
        _, _, matrix = faber_matrix(g, k)
        half.append(exact_rank(matrix))
        logger.debug("R_%d^%d = %d", g, k, half[-1])
        if not half[-1]:
            raise VerificationError(
                f"Faber matrix V_{g}^{k} has rank 0",
                details=["every V_g^k holds the nonzero pairing of kappa_k with kappa_{g-2-k}"],
            )
    profile = [half[min(k, g - 2 - k)] for k in range(g - 1)]
    return profile, sum(profile)
