"""Witten r-spin intersection number services (pure business logic), r = 2, 3, 4.

An insertion tau_{n,m} is the pair (n, m) with 0 <= m <= r - 1. The metric is
eta^{ab} = 1 exactly when a + b = r - 2. Genus zero is built from three-point
values, the four-point normalization and WDVV; higher genus follows the
puncture recursion with its explicit lower-genus terms, after the string
equation has moved the largest descendant onto a tau_{0,0}.
"""
import logging
from fractions import Fraction
from typing import Iterator, Sequence, Set, Tuple

from app.core.cache import memo_table
from app.core.config import SUPPORTED_SPIN
from app.core.errors import InvalidInputError, VerificationError
from app.services.exact import split_multiset

logger = logging.getLogger(__name__)

Insertion = Tuple[int, int]
Insertions = Tuple[Insertion, ...]

PUNCTURE: Insertion = (0, 0)

_rspin = memo_table("rspin")
_solving: Set[Tuple[int, Insertions]] = set()


def canonical(insertions: Sequence[Sequence[int]]) -> Insertions:
    return tuple(sorted((tuple(x) for x in insertions), reverse=True))


def _validate(r: int, g: int, insertions: Insertions) -> None:
    if r not in SUPPORTED_SPIN:
        raise InvalidInputError(f"r-spin numbers are implemented for r in {SUPPORTED_SPIN}, got r={r}")
    if g < 0:
        raise InvalidInputError(f"genus must be >= 0, got {g}")
    for n, m in insertions:
        if n < 0 or not 0 <= m <= r - 1:
            raise InvalidInputError(
                "insertion out of range",
                details=[f"tau_({n},{m}) needs n >= 0 and 0 <= m <= {r - 1}"],
            )


def selection_check(r: int, g: int, insertions: Sequence[Sequence[int]]) -> bool:
    """(r+1)(2g-2) + r*s = r * sum(n) + sum(m)."""
    s = len(insertions)
    return (r + 1) * (2 * g - 2) + r * s == r * sum(n for n, _ in insertions) + sum(m for _, m in insertions)


def _vanishes(r: int, g: int, key: Insertions) -> bool:
    if 2 * g - 2 + len(key) <= 0:
        return True
    if any(n < 0 for n, _ in key):
        return True
    if any(m == r - 1 for _, m in key):
        return True
    return not selection_check(r, g, key)


def _pairings(r: int) -> Iterator[Tuple[int, int]]:
    for e in range(r - 1):
        yield e, r - 2 - e


def rspin_correlator(r: int, g: int, insertions: Sequence[Sequence[int]]) -> Fraction:
    """Return <tau_{n_1,m_1} ... tau_{n_s,m_s}>_g for r in {2, 3, 4}.

    Zero off the selection rule, for unstable (g, s) and whenever some m_i = r - 1.

    Raises:
        InvalidInputError: If r is unsupported or an insertion is out of range
    """
    key = canonical(insertions)
    _validate(r, g, key)
    return _correlator(r, g, key)


def _correlator(r: int, g: int, key: Insertions) -> Fraction:
    key = canonical(key)
    if _vanishes(r, g, key):
        return Fraction(0)
    cache_key = (r, g, key)
    cached = _rspin.get(cache_key)
    if cached is not None:
        return cached
    if g == 0:
        value = _genus0(r, key)
    elif PUNCTURE in key:
        rest = list(key)
        rest.remove(PUNCTURE)
        value = _puncture(r, g, tuple(rest))
    else:
        value = _raise_descendant(r, g, key)
    return _rspin.put(cache_key, value)


def _raise_descendant(r: int, g: int, key: Insertions) -> Fraction:
    """String equation read backwards on the largest descendant.

    Formula:
        <tau_{n_1,m_1} ... >_g = <tau_{0,0} tau_{n_1+1,m_1} ...>_g
            - sum_{j>=2} <tau_{n_1+1,m_1} tau_{n_j-1,m_j} prod_{i!=1,j} ...>_g
    """
    (n1, m1), rest = key[0], key[1:]
    value = _correlator(r, g, ((n1 + 1, m1), PUNCTURE) + rest)
    for j, (nj, mj) in enumerate(rest):
        if nj >= 1:
            value -= _correlator(r, g, ((n1 + 1, m1), (nj - 1, mj)) + rest[:j] + rest[j + 1:])
    return value


def puncture_recursion(r: int, g: int, insertions: Sequence[Sequence[int]]) -> Fraction:
    """<tau_{0,0} tau_{n_1,m_1} ... tau_{n_s,m_s}>_g for g >= 1; ``insertions`` excludes the puncture.

    Formula:
        (2g - 1 + s - a) <tau_{0,0} S>_g
            = 1/2 sum~_{g', I+J=S} sum_{m'+m''=r-2} <tau_{0,0} tau_{0,m'} I>_{g'} <tau_{0,m''} tau_{0,0} J>_{g-g'}
              + Low(r)

    with a = #{i : n_i = 0}. The restricted sum drops the genus-0 three-point
    factors <tau_{0,0} tau_{0,m'} tau_{0,m_i}>_0 with n_i = 0; those terms equal
    <tau_{0,0} S>_g and account for the -a on the left.

    Raises:
        InvalidInputError: If g < 1
    """
    key = canonical(insertions)
    _validate(r, g, key)
    if g < 1:
        raise InvalidInputError("puncture recursion needs g >= 1; genus zero goes through WDVV")
    return _correlator(r, g, (PUNCTURE,) + key)


def _excluded(genus: int, part: Insertions) -> bool:
    return genus == 0 and len(part) == 1 and part[0][0] == 0


def _product(r: int, first: Tuple[int, Insertions], second: Tuple[int, Insertions]) -> Fraction:
    """Product of two correlators, evaluating the lower genus (then fewer points) first."""
    if (first[0], len(first[1])) > (second[0], len(second[1])):
        first, second = second, first
    value = _correlator(r, *first)
    if not value:
        return value
    return value * _correlator(r, *second)


def _puncture(r: int, g: int, rest: Insertions) -> Fraction:
    s = len(rest)
    a = sum(1 for n, _ in rest if n == 0)
    total = Fraction(0)
    for left, right, mult in split_multiset(rest):
        for g1 in range(g + 1):
            if _excluded(g1, left) or _excluded(g - g1, right):
                continue
            for m1, m2 in _pairings(r):
                total += Fraction(mult, 2) * _product(
                    r, (g1, (PUNCTURE, (0, m1)) + left), (g - g1, ((0, m2), PUNCTURE) + right)
                )
    total += low_r(r, g, rest)
    return total / (2 * g - 1 + s - a)


def _split_product(r: int, g_total: int, first: Insertions, second: Insertions, rest: Insertions) -> Fraction:
    """Zero-coupling expansion of <<first>>_{g'} <<second>>_{g_total - g'} summed over g'."""
    total = Fraction(0)
    if g_total < 0:
        return total
    for left, right, mult in split_multiset(rest):
        for g1 in range(g_total + 1):
            total += mult * _product(r, (g1, first + left), (g_total - g1, second + right))
    return total


def low_r(r: int, g: int, passengers: Sequence[Sequence[int]] = ()) -> Fraction:
    """The lower-genus part Low(r) of <<tau_{1,0} tau_{0,0}>>_g at the given passenger insertions.

    r = 2: 1/12 <<tau_{0,0}^4>>_{g-1}
    r = 3: 1/6 <<tau_{0,0}^3 tau_{0,1}>>_{g-1}
    r = 4: 1/4 <<tau_{0,0}^3 tau_{0,2}>>_{g-1} + 1/48 <<tau_{0,0}^2>>_{g'} <<tau_{0,0}^4>>_{g-1-g'}
           + 1/32 <<tau_{0,0}^3>>_{g'} <<tau_{0,0}^3>>_{g-1-g'} + 1/480 <<tau_{0,0}^6>>_{g-2}

    Raises:
        InvalidInputError: If r is not 2, 3 or 4
    """
    rest = canonical(passengers)
    _validate(r, max(g, 0), rest)
    p = PUNCTURE
    if g < 1:
        return Fraction(0)
    if r == 2:
        return _correlator(r, g - 1, (p,) * 4 + rest) / 12
    if r == 3:
        return _correlator(r, g - 1, (p,) * 3 + ((0, 1),) + rest) / 6
    value = _correlator(r, g - 1, (p,) * 3 + ((0, 2),) + rest) / 4
    value += _split_product(r, g - 1, (p,) * 2, (p,) * 4, rest) / 48
    value += _split_product(r, g - 1, (p,) * 3, (p,) * 3, rest) / 32
    if g >= 2:
        value += _correlator(r, g - 2, (p,) * 6 + rest) / 480
    return value


def genus0_wdvv(r: int, insertions: Sequence[Sequence[int]]) -> Fraction:
    """Genus-zero r-spin correlator.

    Three-point primaries are 1 when m_1 + m_2 + m_3 = r - 2. Descendants are
    removed by the string equation or the topological recursion relation;
    four-point primaries are normalized by <tau_{0,1}^2 tau_{0,r-2}^2>_0 = 1/r and
    larger primaries are solved from WDVV.
    """
    key = canonical(insertions)
    _validate(r, 0, key)
    return _correlator(r, 0, key)


def _genus0(r: int, key: Insertions) -> Fraction:
    s = len(key)
    if s == 3:
        return Fraction(1) if all(n == 0 for n, _ in key) and sum(m for _, m in key) == r - 2 else Fraction(0)
    if PUNCTURE in key:
        rest = list(key)
        rest.remove(PUNCTURE)
        total = Fraction(0)
        for j, (nj, mj) in enumerate(rest):
            if nj >= 1:
                total += _correlator(r, 0, tuple(rest[:j]) + ((nj - 1, mj),) + tuple(rest[j + 1:]))
        return total
    if key[0][0] >= 1:
        return _topological_recursion(r, key)
    if s == 4 and sorted(m for _, m in key) == sorted((1, 1, r - 2, r - 2)):
        return Fraction(1, r)
    return _solve_primary(r, key)


def _topological_recursion(r: int, key: Insertions) -> Fraction:
    """<tau_{n+1,a} b c S>_0 = sum_{I+J=S} sum_{e+f=r-2} <tau_{n,a} tau_{0,e} I>_0 <tau_{0,f} b c J>_0."""
    (n, a), b, c, rest = key[0], key[1], key[2], key[3:]
    total = Fraction(0)
    for left, right, mult in split_multiset(rest):
        for e, f in _pairings(r):
            total += mult * _product(r, (0, ((n - 1, a), (0, e)) + left), (0, ((0, f), b, c) + right))
    return total


def _wdvv_terms(r: int, a: Insertion, b: Insertion, c: Insertion, d: Insertion, rest: Insertions):
    """Yield (coefficient, left key, right key) for LHS - RHS of the (a b | c d) WDVV equation."""
    for left, right, mult in split_multiset(rest):
        for e, f in _pairings(r):
            yield mult, canonical((a, b, (0, e)) + left), canonical(((0, f), c, d) + right)
            yield -mult, canonical((a, c, (0, e)) + left), canonical(((0, f), b, d) + right)


def wdvv_residual(
    r: int,
    a: Sequence[int],
    b: Sequence[int],
    c: Sequence[int],
    d: Sequence[int],
    rest: Sequence[Sequence[int]] = (),
) -> Fraction:
    """sum <a b e I>_0 eta^{ef} <f c d J>_0 - sum <a c e I>_0 eta^{ef} <f b d J>_0; zero by associativity."""
    points = canonical([a, b, c, d] + list(rest))
    _validate(r, 0, points)
    total = Fraction(0)
    for coef, left, right in _wdvv_terms(r, tuple(a), tuple(b), tuple(c), tuple(d), canonical(rest)):
        total += coef * _product(r, (0, left), (0, right))
    return total


def _solve_primary(r: int, key: Insertions) -> Fraction:
    """Solve a primary correlator from the WDVV equation with a = tau_{0,1}, b = tau_{0,m-1}.

    The point with the largest m >= 2 is the product tau_{0,1} * tau_{0,m-1};
    the target then appears linearly and every other factor has fewer points
    or is already known.
    """
    m = max(mm for _, mm in key)
    if m < 2:
        return Fraction(0)
    target = (r, key)
    if target in _solving:
        raise VerificationError("WDVV reconstruction revisited its own target", details=[f"r={r}", f"{key}"])
    _solving.add(target)
    try:
        points = list(key)
        points.remove((0, m))
        c, d, rest = points[0], points[1], tuple(points[2:])
        coefficient = Fraction(0)
        known = Fraction(0)
        for coef, left, right in _wdvv_terms(r, (0, 1), (0, m - 1), c, d, rest):
            if right == key:
                coefficient += coef * _correlator(r, 0, left)
            elif left == key:
                coefficient += coef * _correlator(r, 0, right)
            else:
                known += coef * _product(r, (0, left), (0, right))
    finally:
        _solving.discard(target)
    if not coefficient:
        raise VerificationError("WDVV equation does not determine the primary", details=[f"r={r}", f"{key}"])
    return -known / coefficient
