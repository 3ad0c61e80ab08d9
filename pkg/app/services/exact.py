"""Exact combinatorial primitives shared by every computation module.

Intersection numbers are ``fractions.Fraction`` values throughout; Fraction
keeps numerator and denominator coprime with a positive denominator after
every operation, so exact equality is structural equality.
"""
import itertools
import threading
from collections import Counter
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from app.core.errors import InvalidInputError

Rational = Fraction


def double_factorial(k: int) -> int:
    """Return k!! with the conventions (-1)!! = 0!! = 1.

    Args:
        k: Integer >= -1

    Returns:
        Product k(k-2)(k-4)... down to 1 or 2

    Raises:
        InvalidInputError: If k < -1
    """
    if k < -1:
        raise InvalidInputError(f"double factorial undefined for {k}", details=["k must be >= -1"])
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result


def multinomial(total: int, parts: Sequence[int]) -> int:
    """Multinomial coefficient total!/prod(parts!), zero when parts do not sum to total."""
    if any(p < 0 for p in parts) or sum(parts) != total:
        return 0
    result = factorial(total)
    for p in parts:
        result //= factorial(p)
    return result


_bernoulli_even: List[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Return the Bernoulli number B_n for even n >= 2.

    Uses the binomial recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 with
    B_1 = -1/2; odd-index values beyond B_1 vanish and are skipped.

    Raises:
        InvalidInputError: If n is odd or n < 2
    """
    if n < 2 or n % 2:
        raise InvalidInputError(f"bernoulli expects an even index >= 2, got {n}")
    half = n // 2
    if half < len(_bernoulli_even):
        return _bernoulli_even[half]
    with _bernoulli_lock:
        while len(_bernoulli_even) <= half:
            m = 2 * len(_bernoulli_even)
            s = Fraction(m + 1) * Fraction(-1, 2)
            for j, b in enumerate(_bernoulli_even):
                s += comb(m + 1, 2 * j) * b
            _bernoulli_even.append(-s / (m + 1))
    return _bernoulli_even[half]


class MultiIndex:
    """Finitely supported exponent vector b = (b_1, b_2, ...) for kappa monomials.

    Stored as a sorted tuple of (index, multiplicity) pairs with every
    multiplicity positive, so equal vectors compare and hash equal.
    """

    __slots__ = ("_entries", "_hash")

    def __init__(self, multiplicities=None):
        if multiplicities is None:
            items: Iterable[Tuple[int, int]] = ()
        elif isinstance(multiplicities, dict):
            items = multiplicities.items()
        else:
            items = multiplicities
        merged: Dict[int, int] = {}
        for index, mult in items:
            if index < 1:
                raise InvalidInputError(f"kappa index must be >= 1, got {index}")
            if mult < 0:
                raise InvalidInputError(f"negative multiplicity {mult} at index {index}")
            if mult:
                merged[index] = merged.get(index, 0) + mult
        self._entries = tuple(sorted(merged.items()))
        self._hash = hash(self._entries)

    @classmethod
    def delta(cls, index: int, count: int = 1) -> "MultiIndex":
        return cls({index: count})

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "MultiIndex":
        """Build the multi-index counting each part, e.g. (2, 1, 1) -> {1: 2, 2: 1}."""
        return cls(Counter(parts))

    @classmethod
    def from_key(cls, key) -> "MultiIndex":
        return cls(tuple(tuple(pair) for pair in key))

    @property
    def entries(self) -> Tuple[Tuple[int, int], ...]:
        return self._entries

    def key(self) -> Tuple[Tuple[int, int], ...]:
        return self._entries

    def __getitem__(self, index: int) -> int:
        for i, m in self._entries:
            if i == index:
                return m
        return 0

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiIndex) and self._entries == other._entries

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"MultiIndex({dict(self._entries)})"

    def __str__(self) -> str:
        if not self._entries:
            return "0"
        return "+".join(f"{m}*k{i}" if m > 1 else f"k{i}" for i, m in self._entries)

    @property
    def weight(self) -> int:
        """|b| = sum i * b_i."""
        return sum(i * m for i, m in self._entries)

    @property
    def length(self) -> int:
        """||b|| = sum b_i."""
        return sum(m for _, m in self._entries)

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        return MultiIndex(self._entries + other._entries)

    def __sub__(self, other: "MultiIndex") -> "MultiIndex":
        merged = dict(self._entries)
        for i, m in other._entries:
            left = merged.get(i, 0) - m
            if left < 0:
                raise InvalidInputError(f"cannot subtract {other!r} from {self!r}")
            merged[i] = left
        return MultiIndex(merged)

    def __le__(self, other: "MultiIndex") -> bool:
        return all(m <= other[i] for i, m in self._entries)

    def factorial(self) -> int:
        """b! = prod b_i!."""
        result = 1
        for _, m in self._entries:
            result *= factorial(m)
        return result

    def parts(self) -> Tuple[int, ...]:
        """The partition of |b| with b_i parts equal to i, largest first."""
        return tuple(i for i, m in reversed(self._entries) for _ in range(m))

    def multiplicity_vector(self, size: int) -> Tuple[int, ...]:
        return tuple(self[i] for i in range(1, size + 1))

    def sub_indices(self) -> Iterator["MultiIndex"]:
        """Every L with 0 <= L <= self, componentwise."""
        indices = [i for i, _ in self._entries]
        ranges = [range(m + 1) for _, m in self._entries]
        for combo in itertools.product(*ranges):
            yield MultiIndex(zip(indices, combo))

    def splittings(self) -> Iterator[Tuple["MultiIndex", "MultiIndex", int]]:
        """Yield (L, L', binom(b; L)) for every L + L' = b."""
        indices = [i for i, _ in self._entries]
        totals = [m for _, m in self._entries]
        for combo in itertools.product(*(range(m + 1) for m in totals)):
            weight = 1
            for a, m in zip(combo, totals):
                weight *= comb(m, a)
            left = MultiIndex(zip(indices, combo))
            right = MultiIndex((i, m - a) for i, m, a in zip(indices, totals, combo))
            yield left, right, weight


ZERO = MultiIndex()


def multi_binomial(m: MultiIndex, parts: Sequence[MultiIndex]) -> int:
    """Product over i of the multinomial binom(m_i; parts_1(i), ..., parts_r(i)).

    Raises:
        InvalidInputError: If the parts do not sum to m componentwise
    """
    total = ZERO
    for part in parts:
        total = total + part
    if total != m:
        raise InvalidInputError(f"parts {list(parts)!r} do not sum to {m!r}")
    result = 1
    for i, mi in m:
        result *= multinomial(mi, [part[i] for part in parts])
    return result


def ordered_decompositions(m: MultiIndex, r: int) -> List[Tuple[MultiIndex, ...]]:
    """All ordered r-tuples (m_1, ..., m_r) of nonzero multi-indices summing to m."""
    if r < 1 or r > m.length:
        return []
    if r == 1:
        return [(m,)] if m else []
    result = []
    for first in m.sub_indices():
        if not first:
            continue
        rest = m - first
        if rest.length < r - 1:
            continue
        for tail in ordered_decompositions(rest, r - 1):
            result.append((first,) + tail)
    return result


_partition_counts: List[int] = [1]
_partition_lock = threading.Lock()


def partition_count(n: int) -> int:
    """Number of partitions of n by Euler's pentagonal number recurrence.

    Raises:
        InvalidInputError: If n < 0
    """
    if n < 0:
        raise InvalidInputError(f"partition_count expects n >= 0, got {n}")
    if n < len(_partition_counts):
        return _partition_counts[n]
    with _partition_lock:
        p = _partition_counts
        for m in range(len(p), n + 1):
            total = 0
            k = 1
            while True:
                g1 = k * (3 * k - 1) // 2
                if g1 > m:
                    break
                sign = 1 if k % 2 else -1
                total += sign * p[m - g1]
                g2 = k * (3 * k + 1) // 2
                if g2 <= m:
                    total += sign * p[m - g2]
                k += 1
            p.append(total)
    return _partition_counts[n]


def partitions(n: int, largest: int = None) -> Iterator[Tuple[int, ...]]:
    """Yield the partitions of n as weakly decreasing tuples, reverse lexicographic."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def partitions_as_multi_indices(n: int) -> List[MultiIndex]:
    """Partitions of n as multi-indices, sorted lexicographically on (m_1, ..., m_n)."""
    return sorted(
        (MultiIndex.from_parts(p) for p in partitions(n)),
        key=lambda mi: mi.multiplicity_vector(max(n, 1)),
    )


def split_multiset(items: Sequence) -> Iterator[Tuple[tuple, tuple, int]]:
    """Split labeled points carrying the given labels into two groups.

    Equal labels are interchangeable, so each distinct (I, J) is yielded once
    with the number of labeled splittings it stands for.
    """
    counts = sorted(Counter(items).items())
    values = [v for v, _ in counts]
    totals = [c for _, c in counts]
    for combo in itertools.product(*(range(c + 1) for c in totals)):
        weight = 1
        left: list = []
        right: list = []
        for v, a, c in zip(values, combo, totals):
            weight *= comb(c, a)
            left.extend([v] * a)
            right.extend([v] * (c - a))
        yield tuple(left), tuple(right), weight
