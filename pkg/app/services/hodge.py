"""Hodge integral services (pure business logic).

General integrals of psi, kappa, lambda and ch(E) classes are reduced to
pure psi correlators in three steps: kappa classes become extra tau
insertions, lambda classes become Chern character monomials, and Mumford's
formula peels off one ch_{2k-1}(E) at a time.
"""
import logging
from collections import Counter
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.cache import memo_table
from app.core.errors import InvalidInputError, UnstableModuliError
from app.services.descendent import canonical, is_stable, psi_correlator
from app.services.exact import (
    MultiIndex,
    ZERO,
    bernoulli,
    double_factorial,
    multi_binomial,
    multinomial,
    ordered_decompositions,
    partitions,
    split_multiset,
)
from app.services.polynomials import exponent_vectors

logger = logging.getLogger(__name__)

Terms = List[Tuple[Fraction, Tuple[int, ...]]]

_hodge = memo_table("hodge")
_lambda_cache: Dict[int, Terms] = {}


def kappa_to_psi(kappa: MultiIndex) -> Terms:
    """Replace kappa(m) by tau insertions.

    Formula:
        <prod tau_d kappa(m) Psi>_g = sum_k (-1)^{||m||-k}/k! sum_{m = m_1+...+m_k}
            binom(m; m_1..m_k) <prod tau_d prod_j tau_{|m_j|+1} Psi>_g

    Returns:
        List of (coefficient, extra tau indices); kappa(0) gives [(1, ())]
    """
    if not kappa:
        return [(Fraction(1), ())]
    total = kappa.length
    merged: Dict[Tuple[int, ...], Fraction] = {}
    for k in range(1, total + 1):
        sign = Fraction((-1) ** (total - k), factorial(k))
        for parts in ordered_decompositions(kappa, k):
            extra = tuple(sorted((p.weight + 1 for p in parts), reverse=True))
            merged[extra] = merged.get(extra, 0) + sign * multi_binomial(kappa, list(parts))
    return [(coef, extra) for extra, coef in merged.items() if coef]


def _lambda_single(j: int) -> Terms:
    """lambda_j as a combination of products of odd Chern characters."""
    cached = _lambda_cache.get(j)
    if cached is not None:
        return cached
    terms = []
    for mu in partitions(j):
        if any(part % 2 == 0 for part in mu):
            continue
        coef = Fraction((-1) ** (j - len(mu)))
        for part, mult in Counter(mu).items():
            coef *= Fraction(factorial(part - 1) ** mult, factorial(mult))
        terms.append((coef, mu))
    _lambda_cache[j] = terms
    return terms


def lambda_to_ch(lambdas: Sequence[int]) -> Terms:
    """Expand prod lambda_{j} into ch monomials.

    Formula:
        lambda_j = sum_{mu |- j} (-1)^{j - l(mu)} prod_r ((r-1)!)^{m_r} / m_r! ch_mu

    ch_{2k}(E) vanishes for k > 0, so only partitions into odd parts survive.

    Returns:
        List of (coefficient, ch degrees sorted largest first)
    """
    result: Dict[Tuple[int, ...], Fraction] = {(): Fraction(1)}
    for j in lambdas:
        if j < 0:
            raise InvalidInputError(f"lambda index must be >= 0, got {j}")
        if j == 0:
            continue
        expanded: Dict[Tuple[int, ...], Fraction] = {}
        for chs, coef in result.items():
            for coef2, mu in _lambda_single(j):
                key = tuple(sorted(chs + mu, reverse=True))
                expanded[key] = expanded.get(key, 0) + coef * coef2
        result = {k: c for k, c in expanded.items() if c}
    return [(coef, chs) for chs, coef in result.items()]


def ch_reduce(g: int, d: Sequence[int], ch: Sequence[int]) -> Fraction:
    """Return <prod tau_{d_i} prod ch_{c}(E)>_g with each c odd.

    The largest ch degree 2k-1 is removed first with Mumford's formula:

    Formula:
        <tau_d ch_{2k-1} C>_g = B_{2k}/(2k)! [ <tau_{2k} tau_d C>_g
            - sum_j <... tau_{d_j+2k-1} ... C>_g
            + 1/2 sum_{i=0}^{2k-2} (-1)^i <tau_i tau_{2k-2-i} tau_d C>_{g-1}
            + 1/2 sum_{I,J,I',J'} sum_i (-1)^i <tau_i I I'>_{g'} <tau_{2k-2-i} J J'>_{g-g'} ]
    """
    g, d = canonical(g, d)
    ch = tuple(sorted(ch, reverse=True))
    if not ch:
        return psi_correlator(g, d)
    n = len(d)
    if any(c < 1 or c % 2 == 0 for c in ch):
        raise InvalidInputError("ch insertions must be odd degrees >= 1", details=[f"ch={list(ch)}"])
    if g < 1 or not is_stable(g, n) or any(x < 0 for x in d) or sum(d) + sum(ch) != 3 * g - 3 + n:
        return Fraction(0)
    key = (g, d, ch)
    cached = _hodge.get(key)
    if cached is not None:
        return cached
    logger.debug("Mumford reduction of %s", key)

    first, rest = ch[0], ch[1:]
    k = (first + 1) // 2
    value = ch_reduce(g, d + (2 * k,), rest)
    for j, dj in enumerate(d):
        value -= ch_reduce(g, d[:j] + (dj + 2 * k - 1,) + d[j + 1:], rest)

    boundary = Fraction(0)
    for i in range(2 * k - 1):
        sign = -1 if i % 2 else 1
        boundary += sign * ch_reduce(g - 1, d + (i, 2 * k - 2 - i), rest)
        for left, right, mult in split_multiset(d):
            for left_ch, right_ch, mult_ch in split_multiset(rest):
                for g1 in range(g + 1):
                    a = ch_reduce(g1, (i,) + left, left_ch)
                    if not a:
                        continue
                    b = ch_reduce(g - g1, (2 * k - 2 - i,) + right, right_ch)
                    boundary += sign * mult * mult_ch * a * b
    value += boundary / 2
    value *= bernoulli(2 * k) / factorial(2 * k)
    return _hodge.put(key, value)


def hodge_integral(
    g: int,
    psi: Sequence[int] = (),
    kappa: Optional[MultiIndex] = None,
    lambdas: Sequence[int] = (),
    ch: Sequence[int] = (),
) -> Fraction:
    """Integral of prod psi_i^{d_i} kappa(b) prod lambda_j prod ch_c(E) over the moduli space.

    Args:
        g: Genus
        psi: Psi exponents d_1..d_n, one per marked point
        kappa: Kappa exponent vector b
        lambdas: Lambda indices as a multiset, e.g. (1, 1, 1) for lambda_1^3
        ch: Odd Chern character degrees as a multiset

    Returns:
        The exact integral, 0 when the degrees do not add up to 3g - 3 + n
    """
    kappa = kappa or ZERO
    psi, lambdas, ch = tuple(psi), tuple(lambdas), tuple(ch)
    n = len(psi)
    degree = sum(psi) + kappa.weight + sum(lambdas) + sum(ch)
    if degree != 3 * g - 3 + n or any(j > g for j in lambdas):
        return Fraction(0)
    total = Fraction(0)
    ch_terms = lambda_to_ch(lambdas)
    for coef, extra in kappa_to_psi(kappa):
        for coef2, chs in ch_terms:
            total += coef * coef2 * ch_reduce(g, psi + extra, chs + ch)
    return total


def closed_formula_oracle(which: str, g: int, d: Sequence[int] = ()) -> Fraction:
    """Closed values of three families of Hodge integrals.

    lg:  <tau_d lambda_g>_g = binom(2g-3+n; d) (2^{2g-1}-1)/2^{2g-1} |B_{2g}|/(2g)!
    l2g: <tau_d lambda_g lambda_{g-1}>_g = (2g-3+n)! |B_{2g}| / (2^{2g-1} (2g)! prod (2d_j-1)!!), all d_j >= 1
    l3g: <lambda_{g-1}^3>_g = 1/(2g-2)! |B_{2g-2}|/(2g-2) |B_{2g}|/(2g)

    Raises:
        InvalidInputError: If the degree constraint of the chosen formula fails
    """
    d = tuple(d)
    n = len(d)
    if any(x < 0 for x in d):
        raise InvalidInputError("psi exponents must be >= 0", details=[f"d={list(d)}"])
    if which == "lg":
        if g < 1 or sum(d) != 2 * g - 3 + n:
            raise InvalidInputError("lambda_g formula needs g >= 1 and sum d = 2g - 3 + n", details=[f"g={g}", f"d={list(d)}"])
        b = abs(bernoulli(2 * g))
        return multinomial(2 * g - 3 + n, d) * Fraction(2 ** (2 * g - 1) - 1, 2 ** (2 * g - 1)) * b / factorial(2 * g)
    if which == "l2g":
        if g < 1 or sum(d) != g - 2 + n or 2 * g - 3 + n < 0:
            raise InvalidInputError("lambda_g lambda_{g-1} formula needs sum d = g - 2 + n", details=[f"g={g}", f"d={list(d)}"])
        if any(x < 1 for x in d):
            raise InvalidInputError("lambda_g lambda_{g-1} formula needs every d_j >= 1", details=[f"d={list(d)}"])
        denominator = 2 ** (2 * g - 1) * factorial(2 * g)
        for dj in d:
            denominator *= double_factorial(2 * dj - 1)
        return factorial(2 * g - 3 + n) * abs(bernoulli(2 * g)) / denominator
    if which == "l3g":
        if g < 2 or d:
            raise InvalidInputError("lambda_{g-1}^3 formula needs g >= 2 and no points", details=[f"g={g}", f"d={list(d)}"])
        value = abs(bernoulli(2 * g - 2)) / (2 * g - 2) * abs(bernoulli(2 * g)) / (2 * g)
        return value / factorial(2 * g - 2)
    raise InvalidInputError(f"unknown closed formula {which!r}", details=["expected lg, l2g or l3g"])


def _automorphisms(mu: Sequence[int]) -> int:
    result = 1
    for mult in Counter(mu).values():
        result *= factorial(mult)
    return result


def elsv_hurwitz(g: int, mu: Sequence[int]) -> Fraction:
    """Evaluate the ELSV formula for the ramification profile mu.

    Formula:
        H_{g,mu} = r! prod mu_i^{mu_i}/mu_i! int (1 - lambda_1 + ... +- lambda_g) / prod (1 - mu_i psi_i)
        with n = l(mu) and r = 2g - 2 + |mu| + n

    Raises:
        UnstableModuliError: If (g, l(mu)) is unstable
    """
    mu = tuple(sorted(mu, reverse=True))
    n = len(mu)
    if any(m < 1 for m in mu):
        raise InvalidInputError("partition parts must be >= 1", details=[f"mu={list(mu)}"])
    if not is_stable(g, n):
        raise UnstableModuliError(f"ELSV needs a stable (g, n), got ({g}, {n})")
    r = 2 * g - 2 + sum(mu) + n
    prefactor = Fraction(factorial(r))
    for m in mu:
        prefactor *= Fraction(m ** m, factorial(m))

    integral = Fraction(0)
    dim = 3 * g - 3 + n
    for i in range(g + 1):
        lambdas = (i,) if i else ()
        if dim - i < 0:
            continue
        for d in exponent_vectors(n, dim - i):
            weight = 1
            for m, dj in zip(mu, d):
                weight *= m ** dj
            integral += (-1) ** i * weight * hodge_integral(g, psi=d, lambdas=lambdas)
    return prefactor * integral


def hurwitz_number(g: int, mu: Sequence[int]) -> Fraction:
    """Hurwitz number weighted by 1/|Aut(mu)|."""
    return elsv_hurwitz(g, mu) / _automorphisms(mu)


def kl_invert(g: int, d: Sequence[int]) -> Fraction:
    """Recover <tau_d>_g from Hurwitz numbers.

    Formula:
        <prod tau_{d_i}>_g = sum_{mu_i=1}^{d_i+1} |Aut(mu)| / (2g-2+|mu|+n)!
            prod (-1)^{d_i+1-mu_i} / ((d_i+1-mu_i)! mu_i^{mu_i-1}) H_{g,mu}

    |Aut(mu)| H_{g,mu} is the value elsv_hurwitz returns.

    Raises:
        InvalidInputError: If sum d != 3g - 3 + n
    """
    d = tuple(d)
    n = len(d)
    if sum(d) != 3 * g - 3 + n or any(x < 0 for x in d):
        raise InvalidInputError("Kazarian-Lando inversion needs sum d = 3g - 3 + n", details=[f"g={g}", f"d={list(d)}"])
    total = Fraction(0)
    for mu in _boxes([dj + 1 for dj in d]):
        coef = Fraction(1, factorial(2 * g - 2 + sum(mu) + n))
        for dj, m in zip(d, mu):
            e = dj + 1 - m
            coef *= Fraction((-1) ** e, factorial(e) * m ** (m - 1))
        total += coef * elsv_hurwitz(g, mu)
    return total


def _boxes(bounds: Sequence[int]):
    """Every tuple (mu_1..mu_n) with 1 <= mu_i <= bounds_i."""
    if not bounds:
        yield ()
        return
    for first in range(1, bounds[0] + 1):
        for rest in _boxes(bounds[1:]):
            yield (first,) + rest


def _check_lx6_hypotheses(g: int, d: Sequence[int]) -> None:
    if g < 2 or any(dj < 1 for dj in d) or sum(dj - 1 for dj in d) != g:
        raise InvalidInputError(
            "identity needs g >= 2, d_j >= 1 and sum (d_j - 1) = g",
            details=[f"g={g}", f"d={list(d)}"],
        )


def lx6_sides(g: int, d: Sequence[int]) -> Tuple[Fraction, Fraction, Fraction]:
    """The three expressions of the ch_{2g-3} identity.

    Formula:
        (2g-2)!/B_{2g-2} <tau_d ch_{2g-3}>_g
            = (2g-2)/|B_{2g-2}| (<tau_d lambda_{g-1} lambda_{g-2}>_g - 3 <tau_d lambda_{g-3} lambda_g>_g)
            = 1/2 sum_{j=0}^{2g-4} (-1)^j <tau_{2g-4-j} tau_j tau_d>_{g-1}
              + (2g-3+n)! / (2^{2g+1} (2g-3)! prod (2d_j-1)!!)
    """
    d = tuple(d)
    _check_lx6_hypotheses(g, d)
    n = len(d)
    b = bernoulli(2 * g - 2)
    first = factorial(2 * g - 2) / b * hodge_integral(g, psi=d, ch=(2 * g - 3,))

    second = hodge_integral(g, psi=d, lambdas=(g - 1, g - 2))
    if g >= 3:
        second -= 3 * hodge_integral(g, psi=d, lambdas=(g - 3, g))
    second *= Fraction(2 * g - 2) / abs(b)

    third = Fraction(0)
    for j in range(2 * g - 3):
        third += (-1) ** j * psi_correlator(g - 1, (2 * g - 4 - j, j) + d)
    third /= 2
    denominator = 2 ** (2 * g + 1) * factorial(2 * g - 3)
    for dj in d:
        denominator *= double_factorial(2 * dj - 1)
    third += Fraction(factorial(2 * g - 3 + n), denominator)
    return first, second, third


def lx6_identity_check(g: int, d: Sequence[int]) -> bool:
    """True when all three expressions of the ch_{2g-3} identity agree."""
    first, second, third = lx6_sides(g, d)
    return first == second == third


def fa3_identity_check(g: int, d: Sequence[int]) -> Tuple[Fraction, Fraction]:
    """Both sides of the correlator form of the lambda_g lambda_{g-1} evaluation.

    Formula:
        (2g-3+n)! / (2^{2g-1} (2g-1)! prod (2d_j-1)!!)
            = <tau_{2g} tau_d>_g - sum_j <tau_{d_j+2g-1} prod_{i!=j} tau_{d_i}>_g
              + 1/2 sum_{j=0}^{2g-2} (-1)^j <tau_{2g-2-j} tau_j tau_d>_{g-1}
              + 1/2 sum_{I,J} sum_j (-1)^j <tau_j I>_{g'} <tau_{2g-2-j} J>_{g-g'}
        for d_j >= 1 and sum d = g + n - 2

    Returns:
        Tuple (correlator side, closed side)
    """
    d = tuple(d)
    n = len(d)
    if g < 1 or any(dj < 1 for dj in d) or sum(d) != g + n - 2:
        raise InvalidInputError(
            "identity needs d_j >= 1 and sum d = g + n - 2",
            details=[f"g={g}", f"d={list(d)}"],
        )
    denominator = 2 ** (2 * g - 1) * factorial(2 * g - 1)
    for dj in d:
        denominator *= double_factorial(2 * dj - 1)
    closed = Fraction(factorial(2 * g - 3 + n), denominator)

    lhs = psi_correlator(g, (2 * g,) + d)
    for j, dj in enumerate(d):
        lhs -= psi_correlator(g, d[:j] + (dj + 2 * g - 1,) + d[j + 1:])
    boundary = Fraction(0)
    for j in range(2 * g - 1):
        sign = -1 if j % 2 else 1
        boundary += sign * psi_correlator(g - 1, (2 * g - 2 - j, j) + d)
        for left, right, mult in split_multiset(d):
            for g1 in range(g + 1):
                boundary += sign * mult * psi_correlator(g1, (j,) + left) * psi_correlator(g - g1, (2 * g - 2 - j,) + right)
    lhs += boundary / 2
    return lhs, closed


def fa2_check(g: int, d: Sequence[int]) -> Tuple[Fraction, Fraction]:
    """<tau_d lambda_g lambda_{g-1}>_g through the full pipeline against its closed value.

    Raises:
        InvalidInputError: If some d_j < 1 or sum d != g - 2 + n
    """
    return hodge_integral(g, psi=d, lambdas=(g, g - 1)), closed_formula_oracle("l2g", g, d)
