"""Descendent integral services (pure business logic).

<tau_{d_1} ... tau_{d_n}>_g is the integral of psi_1^{d_1}...psi_n^{d_n} over
the moduli space of stable genus-g curves with n marked points. Every function
here is total: unstable (g, n), negative indices or a failed dimension
constraint sum(d) = 3g - 3 + n give 0.
"""
import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

from app.core.cache import memo_table
from app.core.errors import InvalidInputError, UnstableModuliError
from app.services.exact import double_factorial, multinomial, split_multiset

logger = logging.getLogger(__name__)

Key = Tuple[int, Tuple[int, ...]]
Term = Tuple[Fraction, Tuple[Key, ...]]

_psi = memo_table("psi")
_effective = memo_table("psi_effective")

ONE_24 = Fraction(1, 24)


def canonical(g: int, d: Sequence[int]) -> Key:
    """Canonical memo key: genus plus indices sorted largest first."""
    return g, tuple(sorted(d, reverse=True))


def is_stable(g: int, n: int) -> bool:
    return g >= 0 and n >= 0 and 2 * g - 2 + n > 0


def dimension_ok(g: int, d: Sequence[int]) -> bool:
    return all(x >= 0 for x in d) and sum(d) == 3 * g - 3 + len(d)


def psi_correlator(g: int, d: Sequence[int]) -> Fraction:
    """Return <tau_{d_1} ... tau_{d_n}>_g.

    String and dilaton reductions are applied whenever the remainder is
    stable; otherwise the DVV recursion raises the largest index.

    Args:
        g: Genus
        d: Psi exponents in any order

    Returns:
        The exact intersection number, 0 off the stable dimension locus
    """
    g, d = canonical(g, d)
    n = len(d)
    if not is_stable(g, n) or not dimension_ok(g, d):
        return Fraction(0)
    cached = _psi.get((g, d))
    if cached is not None:
        return cached

    if g == 0 and n == 3:
        value = Fraction(1)
    elif g == 1 and n == 1:
        value = ONE_24
    elif d[-1] == 0 and is_stable(g, n - 1):
        value = evaluate(string_terms(g, d))
    elif 1 in d and is_stable(g, n - 1):
        value = evaluate(dilaton_terms(g, d))
    else:
        value = evaluate(dvv_expand(g, d))
    return _psi.put((g, d), value)


def evaluate(terms: List[Term], correlator=None) -> Fraction:
    """Sum coefficient * product of correlators over a term list."""
    correlator = correlator or psi_correlator
    total = Fraction(0)
    for coef, keys in terms:
        if not coef:
            continue
        product = coef
        for kg, kd in keys:
            product *= correlator(kg, kd)
            if not product:
                break
        total += product
    return total


def string_terms(g: int, d: Sequence[int]) -> List[Term]:
    """Terms of <tau_0 prod tau_{d_i}>_g = sum_j <... tau_{d_j - 1} ...>_g."""
    d = list(d)
    if 0 not in d:
        raise InvalidInputError("string equation needs a tau_0 insertion", details=[f"d={d}"])
    d.remove(0)
    if not is_stable(g, len(d)):
        raise UnstableModuliError(
            "string equation target is unstable",
            details=[f"(g, n) = ({g}, {len(d)}) after removing tau_0"],
        )
    terms = []
    for j, dj in enumerate(d):
        if dj == 0:
            continue
        lowered = d[:j] + [dj - 1] + d[j + 1:]
        terms.append((Fraction(1), (canonical(g, lowered),)))
    return terms


def string_reduce(g: int, d: Sequence[int]) -> Fraction:
    """Evaluate a correlator containing tau_0 through the string equation."""
    return evaluate(string_terms(g, d))


def dilaton_terms(g: int, d: Sequence[int]) -> List[Term]:
    """Terms of <tau_1 prod tau_{d_i}>_g = (2g - 2 + n) <prod tau_{d_i}>_g."""
    d = list(d)
    if 1 not in d:
        raise InvalidInputError("dilaton equation needs a tau_1 insertion", details=[f"d={d}"])
    d.remove(1)
    n = len(d)
    if not is_stable(g, n):
        raise UnstableModuliError(
            "dilaton equation remainder is unstable",
            details=[f"(g, n) = ({g}, {n}) after removing tau_1"],
        )
    return [(Fraction(2 * g - 2 + n), (canonical(g, d),))]


def dilaton_reduce(g: int, d: Sequence[int]) -> Fraction:
    """Evaluate a correlator containing tau_1 through the dilaton equation."""
    return evaluate(dilaton_terms(g, d))


def dvv_expand(g: int, d: Sequence[int]) -> List[Term]:
    """DVV right-hand side for the largest index of d.

    Formula:
        <tau_{k+1} prod tau_{d_i}>_g = 1/(2k+3)!! [ sum_j (2k+2d_j+1)!!/(2d_j-1)!! <... tau_{d_j+k} ...>_g
            + 1/2 sum_{r+s=k-1} (2r+1)!!(2s+1)!! <tau_r tau_s prod>_{g-1}
            + 1/2 sum_{r+s=k-1} (2r+1)!!(2s+1)!! sum_{I,J,g'} <tau_r I>_{g'} <tau_s J>_{g-g'} ]
    """
    g, d = canonical(g, d)
    if not d or d[0] < 1:
        raise InvalidInputError("DVV needs an index >= 1", details=[f"d={list(d)}"])
    k = d[0] - 1
    rest = d[1:]
    norm = Fraction(1, double_factorial(2 * k + 3))
    half = norm / 2
    terms: List[Term] = []

    for j, dj in enumerate(rest):
        coef = Fraction(double_factorial(2 * k + 2 * dj + 1), double_factorial(2 * dj - 1))
        raised = rest[:j] + (dj + k,) + rest[j + 1:]
        terms.append((norm * coef, (canonical(g, raised),)))

    for r in range(k):
        s = k - 1 - r
        weight = double_factorial(2 * r + 1) * double_factorial(2 * s + 1)
        if g >= 1:
            terms.append((half * weight, (canonical(g - 1, (r, s) + rest),)))
        for left, right, mult in split_multiset(rest):
            for g1 in range(g + 1):
                terms.append((half * weight * mult, (canonical(g1, (r,) + left), canonical(g - g1, (s,) + right))))
    return terms


def genus0_closed(d: Sequence[int]) -> Fraction:
    """Genus-zero closed formula <tau_{d_1}...tau_{d_n}>_0 = binom(n-3; d_1, ..., d_n).

    Raises:
        UnstableModuliError: If n < 3
    """
    n = len(d)
    if n < 3:
        raise UnstableModuliError(f"genus-zero correlator needs n >= 3, got n={n}")
    if any(x < 0 for x in d) or sum(d) != n - 3:
        return Fraction(0)
    return Fraction(multinomial(n - 3, list(d)))


def effective_recursion(g: int, d: Sequence[int]) -> Fraction:
    """Evaluate <prod tau_{d_j}>_g using only strictly lower genus.

    Zeros are stripped with the string equation first; with all d_j >= 1,

    Formula:
        (2g+n-1)(2g+n-2) <prod tau_{d_j}>_g
            = (2d_1+3)/12 <tau_0^4 tau_{d_1+1} prod_{j>1}>_{g-1}
            - (2g+n-1)/6 <tau_0^3 prod>_{g-1}
            + sum_{I,J} (2d_1+3) <tau_{d_1+1} tau_0^2 I>_{g'} <tau_0^2 J>_{g-g'}
            - sum_{I,J} (2g+n-1) <tau_{d_1} tau_0 I>_{g'} <tau_0^2 J>_{g-g'}

    Products with a genus-g factor vanish when every d_j >= 1 and are skipped,
    so the recursion never consults the DVV route.
    """
    g, d = canonical(g, d)
    n = len(d)
    if not is_stable(g, n) or not dimension_ok(g, d):
        return Fraction(0)
    if g == 0:
        return genus0_closed(d)
    cached = _effective.get((g, d))
    if cached is not None:
        return cached

    if d[-1] == 0:
        value = evaluate(string_terms(g, d), effective_recursion)
    else:
        d1, others = d[0], d[1:]
        a = 2 * g + n - 1
        value = Fraction(2 * d1 + 3, 12) * effective_recursion(g - 1, (0, 0, 0, 0, d1 + 1) + others)
        value -= Fraction(a, 6) * effective_recursion(g - 1, (0, 0, 0) + d)
        for left, right, mult in split_multiset(others):
            for g1 in range(1, g):
                second = effective_recursion(g - g1, (0, 0) + right)
                if not second:
                    continue
                first = (2 * d1 + 3) * effective_recursion(g1, (d1 + 1, 0, 0) + left)
                first -= a * effective_recursion(g1, (d1, 0) + left)
                value += mult * first * second
        value /= a * (a - 1)
    return _effective.put((g, d), value)


def kdv_identity_check(g: int, n: int, extra: Sequence[int] = ()) -> Tuple[Fraction, Fraction]:
    """Both sides of the KdV coefficient identity at zero coupling.

    Formula:
        <tau_n tau_0 tau_0 C>_g = 1/(2n+1) [ sum <tau_{n-1} tau_0 C_1><tau_0^3 C_2>
            + 2 sum <tau_{n-1} tau_0^2 C_1><tau_0^2 C_2> + 1/4 <tau_{n-1} tau_0^4 C>_{g-1} ]

    Products run over genus splits and over splittings C = C_1 + C_2 of the
    passenger insertions.

    Returns:
        Tuple (lhs, rhs)
    """
    if n < 1:
        raise InvalidInputError("KdV identity needs n >= 1", details=[f"n={n}"])
    extra = tuple(extra)
    lhs = psi_correlator(g, (n, 0, 0) + extra)
    rhs = Fraction(0)
    for left, right, mult in split_multiset(extra):
        for g1 in range(g + 1):
            g2 = g - g1
            rhs += mult * psi_correlator(g1, (n - 1, 0) + left) * psi_correlator(g2, (0, 0, 0) + right)
            rhs += 2 * mult * psi_correlator(g1, (n - 1, 0, 0) + left) * psi_correlator(g2, (0, 0) + right)
    if g >= 1:
        rhs += Fraction(1, 4) * psi_correlator(g - 1, (n - 1, 0, 0, 0, 0) + extra)
    rhs /= 2 * n + 1
    return lhs, rhs
