"""Higher Weil-Petersson volume services (pure business logic).

V_{g,n}(b) = <tau_0^n kappa(b)>_g. Mixed psi/kappa correlators come from the
alpha-coefficient recursion; pure volumes have two psi-free recursions, one
for n >= 1 and one for n = 0, plus the kappa -> psi route through hodge.
"""
import logging
from fractions import Fraction
from math import comb
from typing import List, Sequence, Tuple

from app.core.cache import memo_table
from app.core.errors import InvalidInputError, UnstableModuliError
from app.services.descendent import canonical, is_stable, psi_correlator
from app.services.exact import ZERO, MultiIndex, double_factorial, multi_binomial, split_multiset
from app.services.hodge import kappa_to_psi

logger = logging.getLogger(__name__)

MixedTerm = Tuple[Fraction, int, MultiIndex, Tuple[int, ...]]

_alpha = memo_table("alpha")
_mixed = memo_table("wp")
_volume = memo_table("wp_volume")
_closed = memo_table("wp_closed")


def alpha(b: MultiIndex) -> Fraction:
    """Return alpha_b, the constants of the mixed recursion.

    Formula:
        alpha_0 = 1
        alpha_b = b! sum_{L+L'=b, L'!=0} (-1)^{||L'||-1} alpha_L / (L! L'! (2|L'|+1)!!)
    """
    if not b:
        return Fraction(1)
    key = b.key()
    cached = _alpha.get(key)
    if cached is not None:
        return cached
    total = Fraction(0)
    for low, high, _ in b.splittings():
        if not high:
            continue
        sign = 1 if high.length % 2 else -1
        total += sign * alpha(low) / (low.factorial() * high.factorial() * double_factorial(2 * high.weight + 1))
    return _alpha.put(key, total * b.factorial())


def alpha_relation(b: MultiIndex) -> Fraction:
    """sum_{L+L'=b} (-1)^{||L||} alpha_L / (L! L'! (2|L'|+1)!!); zero for every nonzero b."""
    total = Fraction(0)
    for low, high, _ in b.splittings():
        sign = -1 if low.length % 2 else 1
        total += sign * alpha(low) / (low.factorial() * high.factorial() * double_factorial(2 * high.weight + 1))
    return total


def _degree_ok(g: int, b: MultiIndex, d: Sequence[int]) -> bool:
    return is_stable(g, len(d)) and all(x >= 0 for x in d) and b.weight + sum(d) == 3 * g - 3 + len(d)


def kappa_psi_correlator(g: int, b: MultiIndex, d: Sequence[int] = ()) -> Fraction:
    """<kappa(b) tau_{d_1}...tau_{d_n}>_g for any n, routing n = 0 through the one-point reduction."""
    if not d:
        if g < 2 or b.weight != 3 * g - 3:
            return Fraction(0)
        return evaluate_mixed(wp_n0_reduce(g, b))
    return wp_mixed(g, b, d)


def evaluate_mixed(terms: List[MixedTerm]) -> Fraction:
    """Sum coefficient * <kappa(b) tau_d>_g over (coefficient, g, b, d) terms."""
    total = Fraction(0)
    for coef, g, b, d in terms:
        if coef:
            total += coef * kappa_psi_correlator(g, b, d)
    return total


def wp_mixed(g: int, b: MultiIndex, d: Sequence[int]) -> Fraction:
    """Return <kappa(b) tau_{d_1}...tau_{d_n}>_g for n >= 1.

    The largest index plays the role of d_1; initial values are
    <tau_0 kappa_1>_1 = 1/24, <tau_0^3>_0 = 1 and <tau_1>_1 = 1/24.

    Formula:
        (2d_1+1)!! <kappa(b) tau_{d_1} ... tau_{d_n}>_g
            = sum_{j>=2} sum_{L+L'=b} alpha_L binom(b;L) (2(|L|+d_1+d_j)-1)!!/(2d_j-1)!!
                  <kappa(L') tau_{|L|+d_1+d_j-1} prod_{i!=1,j} tau_{d_i}>_g
            + 1/2 sum_{L+L'=b} sum_{r+s=|L|+d_1-2} alpha_L binom(b;L) (2r+1)!!(2s+1)!!
                  <kappa(L') tau_r tau_s prod_{i>=2} tau_{d_i}>_{g-1}
            + 1/2 sum_{L+e+f=b} sum_{I,J} sum_{r+s=|L|+d_1-2} alpha_L binom(b;L,e,f) (2r+1)!!(2s+1)!!
                  <kappa(e) tau_r I>_{g'} <kappa(f) tau_s J>_{g-g'}

    Raises:
        InvalidInputError: If n = 0
    """
    if not d:
        raise InvalidInputError("mixed recursion needs n >= 1; use the n = 0 reduction", details=[f"g={g}"])
    g, d = canonical(g, d)
    if not _degree_ok(g, b, d):
        return Fraction(0)
    if (g, len(d)) == (0, 3):
        return Fraction(1)
    if (g, len(d)) == (1, 1):
        return Fraction(1, 24)
    key = (g, b.key(), d)
    cached = _mixed.get(key)
    if cached is not None:
        return cached

    d1, rest = d[0], d[1:]
    total = Fraction(0)
    for low, high, binom in b.splittings():
        a = alpha(low) * binom
        if not a:
            continue
        for j, dj in enumerate(rest):
            merged = low.weight + d1 + dj - 1
            if merged < 0:
                continue
            coef = Fraction(double_factorial(2 * (merged + 1) - 1), double_factorial(2 * dj - 1))
            total += a * coef * wp_mixed(g, high, rest[:j] + (merged,) + rest[j + 1:])
        top = low.weight + d1 - 2
        for r in range(top + 1):
            s = top - r
            weight = double_factorial(2 * r + 1) * double_factorial(2 * s + 1)
            if g >= 1:
                total += a * weight * wp_mixed(g - 1, high, (r, s) + rest) / 2

    for low, tail, _ in b.splittings():
        a = alpha(low)
        top = low.weight + d1 - 2
        if top < 0:
            continue
        for e, f, _ in tail.splittings():
            binom = multi_binomial(b, [low, e, f])
            for left, right, mult in split_multiset(rest):
                for g1 in range(g + 1):
                    for r in range(top + 1):
                        s = top - r
                        first = wp_mixed(g1, e, (r,) + left)
                        if not first:
                            continue
                        second = wp_mixed(g - g1, f, (s,) + right)
                        weight = double_factorial(2 * r + 1) * double_factorial(2 * s + 1)
                        total += a * binom * mult * weight * first * second / 2

    value = total / double_factorial(2 * d1 + 1)
    return _mixed.put(key, value)


def wp_n0_reduce(g: int, b: MultiIndex) -> List[MixedTerm]:
    """Rewrite <kappa(b)>_g with one tau insertion.

    Formula:
        <kappa(b)>_g = 1/(2g-2) sum_{L+L'=b} (-1)^{||L||} binom(b;L) <tau_{|L|+1} kappa(L')>_g

    Returns:
        List of (coefficient, g, kappa exponents, psi exponents)

    Raises:
        InvalidInputError: If g < 2
    """
    if g < 2:
        raise InvalidInputError("n = 0 reduction needs g >= 2", details=[f"g={g}"])
    terms = []
    for low, high, binom in b.splittings():
        sign = -1 if low.length % 2 else 1
        terms.append((Fraction(sign * binom, 2 * g - 2), g, high, (low.weight + 1,)))
    return terms


def wp_volume(g: int, n: int, b: MultiIndex) -> Fraction:
    """V_{g,n}(b) by the psi-free recursion for n >= 1.

    Formula:
        (2g-1+||b||) V_{g,n}(b) = 1/12 V_{g-1,n+3}(b)
            - sum_{L+L'=b, ||L'||>=2} binom(b;L) V_{g,n}(L + delta_{|L'|})
            + 1/2 sum_{L+L'=b, L,L'!=0} sum_{r+s=n-1} binom(b;L) binom(n-1;r) V_{g',r+2}(L) V_{g-g',s+2}(L')

    Initial values V_{0,3}(0) = 1 and V_{0,n}(delta_{n-3}) = 1.

    Raises:
        InvalidInputError: If n = 0
    """
    if n < 1:
        raise InvalidInputError("volume recursion needs n >= 1", details=[f"n={n}"])
    if g < 0 or not is_stable(g, n) or b.weight != 3 * g - 3 + n:
        return Fraction(0)
    if g == 0 and b.length <= 1:
        return Fraction(1)
    key = (g, n, b.key())
    cached = _volume.get(key)
    if cached is not None:
        return cached

    total = Fraction(0)
    if g >= 1:
        total += wp_volume(g - 1, n + 3, b) / 12
    for low, high, binom in b.splittings():
        if high.length >= 2:
            total -= binom * wp_volume(g, n, low + MultiIndex.delta(high.weight))
        if low and high:
            for r in range(n):
                s = n - 1 - r
                for g1 in range(g + 1):
                    first = wp_volume(g1, r + 2, low)
                    if first:
                        total += Fraction(binom * comb(n - 1, r)) * first * wp_volume(g - g1, s + 2, high) / 2
    value = total / (2 * g - 1 + b.length)
    return _volume.put(key, value)


def _with_kappa(g: int, n: int, b: MultiIndex, index: int) -> Tuple[Fraction, MultiIndex]:
    """b + delta_index, where kappa_0 is the scalar 2g - 2 + n."""
    if index >= 1:
        return Fraction(1), b + MultiIndex.delta(index)
    return Fraction(2 * g - 2 + n), b


def _pointed(g: int, n: int, b: MultiIndex, index: int) -> Fraction:
    factor, b = _with_kappa(g, n, b, index)
    return factor * wp_volume(g, n, b)


def _closed_only(g: int, b: MultiIndex, index: int) -> Fraction:
    factor, b = _with_kappa(g, 0, b, index)
    return factor * wp_volume_closed(g, b)


def wp_volume_closed(g: int, b: MultiIndex) -> Fraction:
    """V_g(b) = <kappa(b)>_g for g >= 2, reduced to volumes with marked points.

    Formula:
        ((2g-1)(2g-2) + (4g-3)||b|| + ||b||^2) V_g(b)
            = 5 sum_{L+L'=b} binom(b;L) V_{g,1}(L + delta_{|L'|+1})
            - 1/6 sum_{L+L'=b} binom(b;L) V_{g-1,3}(L + delta_{|L'|})
            - sum_{L+e+f=b} binom(b;L,e,f) V_{g',1}(e + delta_{|L|}) V_{g-g',2}(f)
            - (2g-1+||b||) sum_{L+L'=b, ||L'||>=2} binom(b;L) V_g(L + delta_{|L'|})
            - sum_{L+L'=b, ||L'||>=2} binom(b;L) sum_{e+f=L+delta_{|L'|}} binom(L+delta_{|L'|}; e) V_g(e + delta_{|f|})

    kappa_0 on a space with n points is the scalar 2g - 2 + n.

    Raises:
        InvalidInputError: If g < 2
    """
    if g < 2:
        raise InvalidInputError("closed volume recursion needs g >= 2", details=[f"g={g}"])
    if b.weight != 3 * g - 3:
        return Fraction(0)
    key = (g, b.key())
    cached = _closed.get(key)
    if cached is not None:
        return cached

    size = b.length
    total = Fraction(0)
    for low, high, binom in b.splittings():
        total += 5 * binom * _pointed(g, 1, low, high.weight + 1)
        total -= Fraction(binom, 6) * _pointed(g - 1, 3, low, high.weight)
        if high.length >= 2:
            merged = low + MultiIndex.delta(high.weight)
            total -= (2 * g - 1 + size) * binom * wp_volume_closed(g, merged)
            for e, f, binom_e in merged.splittings():
                total -= binom * binom_e * _closed_only(g, e, f.weight)
    for low, tail, _ in b.splittings():
        for e, f, _ in tail.splittings():
            binom = multi_binomial(b, [low, e, f])
            for g1 in range(1, g):
                first = _pointed(g1, 1, e, low.weight)
                if first:
                    total -= binom * first * wp_volume(g - g1, 2, f)

    value = total / ((2 * g - 1) * (2 * g - 2) + (4 * g - 3) * size + size * size)
    return _closed.put(key, value)


def kappa_psi_exchange(g: int, d: Sequence[int], b: MultiIndex = ZERO) -> List[MixedTerm]:
    """Trade the last marked point for a kappa class.

    Formula:
        <tau_{d_1}...tau_{d_n} kappa(b)>_g = sum_{L+L'=b} binom(b;L) <tau_{d_1}...tau_{d_{n-1}} kappa(L') kappa_{|L|+d_n-1}>_g

    kappa_0 is the scalar 2g - 2 + (n - 1).

    Raises:
        InvalidInputError: If d_n = 0
        UnstableModuliError: If (g, n - 1) is unstable
    """
    d = tuple(d)
    if not d or d[-1] < 1:
        raise InvalidInputError("exchange needs a last psi exponent >= 1", details=[f"d={list(d)}"])
    head = d[:-1]
    if not is_stable(g, len(head)):
        raise UnstableModuliError(f"exchange target ({g}, {len(head)}) is unstable")
    terms = []
    for low, high, binom in b.splittings():
        factor, merged = _with_kappa(g, len(head), high, low.weight + d[-1] - 1)
        terms.append((binom * factor, g, merged, head))
    return terms


def kappa_route(g: int, n: int, b: MultiIndex) -> Fraction:
    """V_{g,n}(b) through kappa removal and pure psi correlators."""
    total = Fraction(0)
    for coef, extra in kappa_to_psi(b):
        total += coef * psi_correlator(g, (0,) * n + extra)
    return total


def volume(g: int, n: int, b: MultiIndex, route: str = "volume") -> Fraction:
    """V_{g,n}(b) by the named route: "volume", "mixed" or "kappa"."""
    if route == "kappa":
        return kappa_route(g, n, b)
    if route == "mixed":
        return kappa_psi_correlator(g, b, (0,) * n)
    if route == "volume":
        if n == 0:
            return wp_volume_closed(g, b) if g >= 2 else Fraction(0)
        return wp_volume(g, n, b)
    raise InvalidInputError(f"unknown volume route {route!r}", details=["expected volume, mixed or kappa"])
