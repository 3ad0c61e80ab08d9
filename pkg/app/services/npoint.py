"""n-point function services (pure business logic).

F(x_1, ..., x_n) = sum_g sum_d <tau_{d_1}...tau_{d_n}>_g prod x_j^{d_j} and its
normalized form G = exp(-sum x_j^3 / 24) F. The genus-g parts F_g and G_g are
homogeneous of degree 3g + n - 3 and are built here as exact polynomials.

The genus-zero one- and two-point pieces are not polynomials (G_0(x) = 1/x^2,
G_0(x, y) = 1/(x + y)), so the recursions run on H_g = (sum x)^2 G_g, which is
a polynomial for every (g, n), and divide back out exactly.
"""
import itertools
import logging
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.core.cache import memo_table
from app.core.errors import InvalidInputError, UnstableModuliError, VerificationError
from app.services.descendent import is_stable, psi_correlator
from app.services.exact import bernoulli, double_factorial, multinomial, split_multiset
from app.services.hodge import hodge_integral
from app.services.polynomials import SymPoly, exponent_vectors

logger = logging.getLogger(__name__)

G_ROUTES = ("sum", "recursion")

_normalized = memo_table("npoint", persistent=False)
_kernel = memo_table("npoint_kernel", persistent=False)


def _check_stable(g: int, n: int) -> None:
    if n < 1:
        raise InvalidInputError("n-point functions need n >= 1", details=[f"n={n}"])
    if not is_stable(g, n):
        raise UnstableModuliError(
            f"(g, n) = ({g}, {n}) is unstable",
            details=["2g - 2 + n must be positive"],
        )


def delta_poly(n: int) -> SymPoly:
    """Delta = ((sum x)^3 - sum x^3) / 3; for n = 3 this is (x+y)(y+z)(z+x)."""
    return ((SymPoly.sum_of_vars(n) ** 3) - SymPoly.power_sum(3, n)) / 3


def _subsets(n: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Ordered splittings {1..n} = I + J with I and J both nonempty."""
    for mask in range(1, 2 ** n - 1):
        left = tuple(i for i in range(n) if mask >> i & 1)
        right = tuple(i for i in range(n) if not mask >> i & 1)
        yield left, right


def _normalized_h(g: int, n: int, route: str) -> SymPoly:
    """H_g = (sum x)^2 G_g in n variables, for any g >= 0, n >= 1."""
    if n == 1:
        return SymPoly.constant(1 if g == 0 else 0, 1)
    if g == 0 and n == 2:
        return SymPoly.sum_of_vars(2)
    key = (route, g, n)
    cached = _normalized.get(key)
    if cached is not None:
        return cached
    value = npoint_G(g, n, route) * SymPoly.sum_of_vars(n) ** 2
    return _normalized.put(key, value)


def _split_sum(r: int, n: int, route: str) -> SymPoly:
    """sum_{I,J} sum_{r'} H_{r'}(x_I) H_{r-r'}(x_J) over ordered nonempty splittings."""
    total = SymPoly.zero(n)
    for left, right in _subsets(n):
        for r1 in range(r + 1):
            first = _normalized_h(r1, len(left), route)
            if not first:
                continue
            second = _normalized_h(r - r1, len(right), route)
            if not second:
                continue
            total = total + first.embed(n, left) * second.embed(n, right)
    return total


def _assert_shape(poly: SymPoly, degree: int, what: str) -> SymPoly:
    if not poly.is_homogeneous(degree) or not poly.is_symmetric():
        raise VerificationError(
            f"{what} is not a symmetric homogeneous polynomial of degree {degree}",
            details=[repr(poly)],
        )
    return poly


def npoint_G(g: int, n: int, route: str = "sum") -> SymPoly:
    """Return the normalized n-point function G_g(x_1, ..., x_n).

    Args:
        g: Genus
        n: Number of variables
        route: "sum" evaluates the double sum over (r, s) with the P_r and
            Delta^s building blocks; "recursion" steps up one genus at a time

    Formula:
        sum:       G_g = sum_{r+s=g} (2r+n-3)!! / (4^s (2g+n-1)!!) P_r Delta^s
        recursion: G_g = P_g/(2g+n-1) + Delta G_{g-1} / (4(2g+n-1))
        where P_r = 1/(2 sum x) sum_{I,J} sum_{r'} H_{r'}(x_I) H_{r-r'}(x_J)

    Raises:
        UnstableModuliError: If (g, n) is unstable
        DivisibilityError: If sum x fails to divide an intermediate sum
    """
    _check_stable(g, n)
    if route not in G_ROUTES:
        raise InvalidInputError(f"unknown n-point route {route!r}", details=[f"expected one of {G_ROUTES}"])
    if n == 1:
        return SymPoly.zero(1)

    total_x = SymPoly.sum_of_vars(n)
    delta = delta_poly(n)
    logger.debug("Building G_%d in %d variables via %s", g, n, route)

    if route == "recursion":
        result = _split_sum(g, n, route).divide(total_x) / 2
        if g >= 1:
            lower = _normalized_h(g - 1, n, route)
            result = result + (delta * lower).divide(total_x ** 2) / 4
        result = result / (2 * g + n - 1)
    else:
        result = SymPoly.zero(n)
        denominator = double_factorial(2 * g + n - 1)
        for r in range(g + 1):
            s = g - r
            block = _split_sum(r, n, route)
            if not block:
                continue
            coef = Fraction(double_factorial(2 * r + n - 3), 4 ** s * denominator)
            result = result + (block * delta ** s).divide(total_x) * (coef / 2)

    return _assert_shape(result, 3 * g + n - 3, f"G_{g}({n} variables)")


def npoint_F(g: int, n: int, route: str = "sum") -> SymPoly:
    """Return F_g(x_1, ..., x_n), whose coefficients are the correlators <prod tau_{d_j}>_g.

    Formula:
        F_g = (1 / (sum x)^2) sum_j H_{g-j} (sum x^3 / 24)^j / j!

    Raises:
        UnstableModuliError: If (g, n) is unstable
    """
    _check_stable(g, n)
    if route not in G_ROUTES:
        raise InvalidInputError(f"unknown n-point route {route!r}", details=[f"expected one of {G_ROUTES}"])
    cubes = SymPoly.power_sum(3, n) / 24
    total = SymPoly.zero(n)
    for j in range(g + 1):
        h = _normalized_h(g - j, n, route)
        if h:
            total = total + h * (cubes ** j) / factorial(j)
    return total.divide(SymPoly.sum_of_vars(n) ** 2)


def _kernel_k(g: int, n: int) -> SymPoly:
    """K_g = (sum x)^2 F_g in n variables."""
    if n == 1:
        return SymPoly(1, {(3 * g,): Fraction(1, 24 ** g * factorial(g))})
    if g == 0 and n == 2:
        return SymPoly.sum_of_vars(2)
    key = (g, n)
    cached = _kernel.get(key)
    if cached is not None:
        return cached
    value = npoint_F_via_K(g, n) * SymPoly.sum_of_vars(n) ** 2
    return _kernel.put(key, value)


def npoint_F_via_K(g: int, n: int) -> SymPoly:
    """F_g computed by the recursion on K_g = (sum x)^2 F_g.

    Formula:
        (2g+n-1) (sum x) F_g = 1/12 (sum x)^2 K_{g-1}
            + 1/2 sum_{I,J} sum_{g'} K_{g'}(x_I) K_{g-g'}(x_J)
    """
    _check_stable(g, n)
    if n == 1:
        return SymPoly(1, {(3 * g - 2,): Fraction(1, 24 ** g * factorial(g))})
    total_x = SymPoly.sum_of_vars(n)
    rhs = SymPoly.zero(n)
    if g >= 1:
        rhs = rhs + total_x ** 2 * _kernel_k(g - 1, n) / 12
    for left, right in _subsets(n):
        for g1 in range(g + 1):
            rhs = rhs + _kernel_k(g1, len(left)).embed(n, left) * _kernel_k(g - g1, len(right)).embed(n, right) / 2
    return rhs.divide(total_x) / (2 * g + n - 1)


def two_point_closed(max_degree: int) -> Dict[int, SymPoly]:
    """Dijkgraaf's two-point function, summand by summand.

    Returns (x + y) G_k(x, y) = k!/(2k+1)! (xy(x+y)/2)^k for every k whose
    summand has degree 3k - 1 <= max_degree; the k = 0 entry is the constant 1.
    """
    if max_degree < 0:
        raise InvalidInputError(f"degree cap must be >= 0, got {max_degree}")
    x, y = SymPoly.variable(0, 2), SymPoly.variable(1, 2)
    base = x * y * (x + y) / 2
    result = {}
    k = 0
    while k == 0 or 3 * k - 1 <= max_degree:
        result[k] = base ** k * Fraction(factorial(k), factorial(2 * k + 1))
        k += 1
    return result


def zagier_s(r: int) -> SymPoly:
    """S_r(x, y, z) = [(xy)^r (x+y)^{r+1} + (yz)^r (y+z)^{r+1} + (zx)^r (z+x)^{r+1}] / (x+y+z)."""
    x, y, z = (SymPoly.variable(i, 3) for i in range(3))
    numerator = (x * y) ** r * (x + y) ** (r + 1)
    numerator = numerator + (y * z) ** r * (y + z) ** (r + 1)
    numerator = numerator + (z * x) ** r * (z + x) ** (r + 1)
    return numerator.divide(x + y + z)


def three_point_closed(max_degree: int) -> Dict[int, SymPoly]:
    """Zagier's three-point function: {g: G_g(x, y, z)} for 3g <= max_degree.

    Formula:
        G = sum_{r,s} r! S_r / (4^r (2r+1)!! 2) * Delta^s / (8^s (r+s+1)!)
    """
    if max_degree < 0:
        raise InvalidInputError(f"degree cap must be >= 0, got {max_degree}")
    delta = delta_poly(3)
    result = {}
    for g in range(max_degree // 3 + 1):
        total = SymPoly.zero(3)
        for r in range(g + 1):
            s = g - r
            coef = Fraction(factorial(r), 4 ** r * double_factorial(2 * r + 1) * 2)
            coef /= 8 ** s * factorial(r + s + 1)
            total = total + zagier_s(r) * delta ** s * coef
        result[g] = total
    return result


def _wmb_subtree(leaves: Tuple[int, ...], weight: int, n: int, memo: dict) -> SymPoly:
    """Sum over weighted marked binary subtrees on ``leaves`` carrying total genus ``weight``."""
    key = (leaves, weight)
    if key in memo:
        return memo[key]
    x_sum = SymPoly.sum_of_vars(n, leaves)
    if len(leaves) == 1:
        value = x_sum ** (3 * weight + 1) / double_factorial(2 * weight)
    else:
        value = SymPoly.zero(n)
        first, others = leaves[0], leaves[1:]
        size = len(leaves)
        # the child holding the smallest label is the left child
        for k in range(len(others)):
            for extra in itertools.combinations(others, k):
                left = (first,) + extra
                right = tuple(i for i in others if i not in extra)
                for own in range(weight + 1):
                    below = weight - own
                    coef = Fraction(
                        double_factorial(size - 3 + 2 * below),
                        double_factorial(size - 1 + 2 * weight),
                    )
                    vertex = x_sum ** (3 * own + 1) * coef
                    for w_left in range(below + 1):
                        value = value + vertex * _wmb_subtree(left, w_left, n, memo) * _wmb_subtree(
                            right, below - w_left, n, memo
                        )
    memo[key] = value
    return value


def wmb_expansion(g: int, n: int) -> SymPoly:
    """Sum over weighted marked binary trees; equals 12^g (prod x) (sum x)^2 F_g.

    Each vertex v with leaf set L(v), own weight g(v) and subtree weight W(v)
    contributes (|L(v)| - 3 + 2(W(v) - g(v)))!! / (|L(v)| - 1 + 2W(v))!!
    times (sum_{L(v)} x)^{3g(v)+1}; a leaf contributes x^{3g(v)+1} / (2g(v))!!.
    """
    _check_stable(g, n)
    return _wmb_subtree(tuple(range(n)), g, n, {})


def wmb_count(g: int, n: int) -> int:
    """Number of isomorphism classes of weighted marked binary trees of type (g, n)."""
    _check_stable(g, n)
    memo: Dict[Tuple[int, int], int] = {}

    def count(size: int, weight: int) -> int:
        if size == 1:
            return 1
        key = (size, weight)
        if key not in memo:
            total = 0
            for left_size in range(1, size):
                # left child holds the smallest label
                splits = multinomial(size - 1, [left_size - 1, size - left_size])
                for own in range(weight + 1):
                    for w_left in range(weight - own + 1):
                        total += splits * count(left_size, w_left) * count(size - left_size, weight - own - w_left)
            memo[key] = total
        return memo[key]

    return count(n, g)


def wmb_F(g: int, n: int) -> SymPoly:
    """F_g recovered from the tree expansion."""
    divisor = SymPoly.sum_of_vars(n) ** 2
    for i in range(n):
        divisor = divisor * SymPoly.variable(i, n)
    return wmb_expansion(g, n).divide(divisor) / 12 ** g


def _coefficient_expected(case: str, g: int, d: Sequence[int]) -> Fraction:
    denominator = 4 ** g
    for dj in d:
        denominator *= double_factorial(2 * dj + 1)
    if case == "i":
        return Fraction(0)
    if case == "ii":
        return Fraction(1, denominator)
    n = len(d)
    a = sum(1 for dj in d if dj == 0)
    numerator = Fraction(2 * g * g + (2 * n - 1) * g) + Fraction(n * n - n, 2) - 3 + Fraction(5 * a - a * a, 2)
    return numerator / denominator


def _coefficient_cases(case: str, g: int, n: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """Every (k, d) satisfying the hypotheses of the given case."""
    if case == "i":
        pairs = []
        for k in range(2 * g - 1 + n, 3 * g - 1 + n):
            pairs.extend((k, d) for d in exponent_vectors(n, 3 * g - 2 + n - k))
        return pairs
    if case == "ii":
        return [(2 * g - 2 + n, d) for d in exponent_vectors(n, g)]
    if 2 * g - 3 + n < 0:
        return []
    return [(2 * g - 3 + n, d) for d in exponent_vectors(n, g + 1)]


def coeff_theorem_check(g: int, n: int, case: str, d: Optional[Sequence[int]] = None) -> bool:
    """Compare coefficients of z^k prod x_j^{d_j} in G_g(z, x_1..x_n) with the closed values.

    case "i":   k > 2g-2+n, sum d = 3g-2+n-k, coefficient 0
    case "ii":  k = 2g-2+n, sum d = g, coefficient 1/(4^g prod (2d_j+1)!!)
    case "iii": k = 2g-3+n, sum d = g+1, coefficient
                (2g^2 + (2n-1)g + (n^2-n)/2 - 3 + (5a-a^2)/2) / (4^g prod (2d_j+1)!!)
                with a = #{j : d_j = 0}

    With ``d`` omitted every admissible index vector is checked.

    Raises:
        InvalidInputError: If the case is unknown or d violates its hypotheses
    """
    if case not in ("i", "ii", "iii"):
        raise InvalidInputError(f"unknown coefficient case {case!r}", details=["expected i, ii or iii"])
    pairs = _coefficient_cases(case, g, n)
    if d is not None:
        d = tuple(d)
        pairs = [(k, dd) for k, dd in pairs if dd == d]
        if len(d) != n or not pairs:
            raise InvalidInputError(
                f"exponents {list(d)} violate the hypotheses of case {case}",
                details=[f"g={g}, n={n}"],
            )
    poly = npoint_G(g, n + 1)
    for k, dd in pairs:
        if poly.coefficient((k,) + dd) != _coefficient_expected(case, g, dd):
            logger.info("Coefficient case %s fails at g=%d, k=%d, d=%s", case, g, k, dd)
            return False
    return True


def virtual_correlator(g: int, d: Sequence[int]) -> Fraction:
    """psi_correlator extended by <tau_{-2}>_0 = 1 and <tau_k tau_{-1-k}>_0 = (-1)^k.

    Any other correlator with a negative index is 0.
    """
    d = tuple(d)
    if g == 0 and len(d) == 1:
        return Fraction(1) if d[0] == -2 else Fraction(0)
    if g == 0 and len(d) == 2:
        if sum(d) == -1:
            return Fraction(-1) ** max(d)
        return Fraction(0)
    if any(x < 0 for x in d):
        return Fraction(0)
    return psi_correlator(g, d)


def _binomial_expansions(power: int, caps: Sequence[int]) -> Iterator[Tuple[int, int, Tuple[int, ...]]]:
    """Terms of (y + sum x_i)^power as (coefficient, y exponent, x exponents) with x_i^{e_i}, e_i <= caps_i."""
    for exps in exponent_vectors(len(caps) + 1, power):
        if all(e <= c for e, c in zip(exps[1:], caps)):
            yield multinomial(power, exps), exps[0], exps[1:]


def lab_coefficient(g: int, a: int, b: int, y_power: int, d: Sequence[int]) -> Fraction:
    """Coefficient of y^{y_power} prod x_j^{d_j} in L_g^{a,b}(y, x_1, ..., x_n).

    Formula:
        L_g^{a,b} = sum_{g'} sum_{I,J} (y + sum_I x)^a (-y + sum_J x)^b F_{g'}(y, x_I) F_{g-g'}(-y, x_J)

    The sum runs over all splittings, empty parts included, and the genus-zero
    one- and two-point factors are expanded in negative powers of y through
    ``virtual_correlator``.
    """
    if a < 0 or b < 0:
        raise InvalidInputError("L^{a,b} needs a, b >= 0", details=[f"a={a}", f"b={b}"])
    d = tuple(d)
    n = len(d)
    total = Fraction(0)
    for mask in range(2 ** n):
        left = [d[i] for i in range(n) if mask >> i & 1]
        right = [d[i] for i in range(n) if not mask >> i & 1]
        for g1 in range(g + 1):
            g2 = g - g1
            for c1, ey, ex in _binomial_expansions(a, left):
                rest_left = tuple(di - e for di, e in zip(left, ex))
                j1 = 3 * g1 - 2 + len(left) - sum(rest_left)
                first = virtual_correlator(g1, (j1,) + rest_left)
                if not first:
                    continue
                for c2, fy, fx in _binomial_expansions(b, right):
                    rest_right = tuple(di - f for di, f in zip(right, fx))
                    j2 = 3 * g2 - 2 + len(right) - sum(rest_right)
                    if ey + fy + j1 + j2 != y_power:
                        continue
                    second = virtual_correlator(g2, (j2,) + rest_right)
                    if not second:
                        continue
                    sign = -1 if (fy + j2) % 2 else 1
                    total += sign * c1 * c2 * first * second
    return total


def lab_slice(g: int, a: int, b: int, y_power: int, n: int) -> SymPoly:
    """[L_g^{a,b}]_{y^{y_power}} as a polynomial in x_1, ..., x_n."""
    degree = 3 * g - 4 + n + a + b - y_power
    terms = {}
    if degree >= 0:
        for d in exponent_vectors(n, degree):
            terms[d] = lab_coefficient(g, a, b, y_power, d)
    return SymPoly(n, terms)


def lab_closed_value(g: int, d: Sequence[int]) -> Fraction:
    """(2g+n+1)! / (4^g (2g+1)! prod (2d_j-1)!!), the y^{2g} prod x^d coefficient of L_g^{2,2}."""
    if any(dj < 1 for dj in d) or sum(d) != g + len(d):
        raise InvalidInputError(
            "closed L^{2,2} coefficient needs d_j >= 1 and sum d = g + n",
            details=[f"g={g}", f"d={list(d)}"],
        )
    denominator = 4 ** g * factorial(2 * g + 1)
    for dj in d:
        denominator *= double_factorial(2 * dj - 1)
    return Fraction(factorial(2 * g + len(d) + 1), denominator)


def lx1_check(
    g: int,
    k: int,
    p: Sequence[int] = (),
    q: Sequence[int] = (),
    extra: Sequence[int] = (),
) -> Tuple[Fraction, Fraction]:
    """Alternating convolution that vanishes for k >= 2g - 3 + |p| + |q|.

    Formula:
        sum_{g'} sum_j (-1)^j <tau_j prod tau_p C_1>_{g'} <tau_{k-j} prod tau_q C_2>_{g-g'} = 0

    j runs over all integers; only -2 <= j <= k + 2 can contribute. The
    passengers ``extra`` are split over C_1 + C_2.

    Returns:
        Tuple (lhs, 0)
    """
    p, q, extra = tuple(p), tuple(q), tuple(extra)
    if k < 2 * g - 3 + len(p) + len(q):
        raise InvalidInputError(
            "vanishing needs k >= 2g - 3 + r + s",
            details=[f"g={g}", f"k={k}", f"r={len(p)}", f"s={len(q)}"],
        )
    total = Fraction(0)
    for left, right, mult in split_multiset(extra):
        for g1 in range(g + 1):
            for j in range(-2, k + 3):
                first = virtual_correlator(g1, (j,) + p + left)
                if not first:
                    continue
                second = virtual_correlator(g - g1, (k - j,) + q + right)
                if second:
                    total += (-1) ** (j % 2) * mult * first * second
    return total, Fraction(0)


def lx2_check(g: int, k: Optional[int] = None, extra: Sequence[int] = ()) -> Tuple[Fraction, Fraction]:
    """Alternating two-point sums against their closed values.

    With k > g:
        sum_{j=0}^{2k} (-1)^j <tau_j tau_{2k-j} C>_g = 0
    With k omitted (g >= 1):
        1/2 sum_{j=0}^{2g-2} (-1)^j <tau_j tau_{2g-2-j} C>_{g-1} = (2g)!/B_{2g} <ch_{2g-1}(E) C>_g

    Returns:
        Tuple (lhs, rhs)
    """
    extra = tuple(extra)
    if k is not None:
        if k <= g:
            raise InvalidInputError("vanishing needs k > g", details=[f"g={g}", f"k={k}"])
        lhs = sum(
            (Fraction((-1) ** j) * psi_correlator(g, (j, 2 * k - j) + extra) for j in range(2 * k + 1)),
            Fraction(0),
        )
        return lhs, Fraction(0)
    if g < 1:
        raise InvalidInputError("the Chern character form needs g >= 1", details=[f"g={g}"])
    lhs = sum(
        (Fraction((-1) ** j) * psi_correlator(g - 1, (j, 2 * g - 2 - j) + extra) for j in range(2 * g - 1)),
        Fraction(0),
    ) / 2
    rhs = Fraction(factorial(2 * g)) / bernoulli(2 * g) * hodge_integral(g, psi=extra, ch=(2 * g - 1,))
    return lhs, rhs
