"""Mock theta function services (pure business logic).

omega(q) = sum q^{2n^2+2n} / prod_{j=0}^{n} (1 - q^{2j+1})^2 and its
coefficients omega(n): exact q-series expansions, Garthwaite's exact
formula evaluated numerically, and the integer sequences p_omega, a_omega
that split omega_g = omega(g - 2) into a palindromic profile.
"""
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.config import GARTHWAITE_DPS, GARTHWAITE_K_MAX, MPMATH_AVAILABLE, ROUNDING_GUARD, mp
from app.core.errors import IntegralityError, InvalidInputError, NoConvergenceError, VerificationError
from app.services.exact import partition_count

logger = logging.getLogger(__name__)

QSeries = List[int]


def _check_order(N: int) -> None:
    if N < 0:
        raise InvalidInputError(f"series order must be >= 0, got {N}")


def _divide(coeffs: QSeries, a: int, sign: int = -1) -> QSeries:
    """Multiply by 1/(1 + sign*q^a) modulo q^{N+1}, in place."""
    for i in range(a, len(coeffs)):
        coeffs[i] -= sign * coeffs[i - a]
    return coeffs


def _shift(coeffs: QSeries, k: int) -> QSeries:
    """q^k * series, truncated to the same length."""
    if k >= len(coeffs):
        return [0] * len(coeffs)
    return [0] * k + coeffs[: len(coeffs) - k]


def _nested(N: int, top: int, step) -> QSeries:
    """Evaluate T = 1 + ratio_n * (1 + ratio_{n+1} * (...)) from the inside out.

    ``step(n, coeffs)`` multiplies coeffs by the ratio of the n-th summand to
    the (n-1)-th one.
    """
    acc = [0] * (N + 1)
    acc[0] = 1
    for n in range(top, 0, -1):
        acc = step(n, acc)
        acc[0] += 1
    return acc


def omega_series(N: int) -> QSeries:
    """Coefficients omega(0..N) from the defining sum.

    Consecutive summands differ by q^{4n} / (1 - q^{2n+1})^2, so the sum is
    evaluated by nesting and finally divided by (1 - q)^2.
    """
    _check_order(N)
    top = 0
    while 2 * (top + 1) ** 2 + 2 * (top + 1) <= N:
        top += 1

    def step(n: int, coeffs: QSeries) -> QSeries:
        coeffs = _shift(coeffs, 4 * n)
        _divide(coeffs, 2 * n + 1)
        return _divide(coeffs, 2 * n + 1)

    acc = _nested(N, top, step)
    _divide(acc, 1)
    return _divide(acc, 1)


def omega_series_alt(N: int) -> QSeries:
    """Coefficients omega(0..N) from sum q^n / prod_{j=0}^{n} (1 - q^{2j+1})."""
    _check_order(N)

    def step(n: int, coeffs: QSeries) -> QSeries:
        return _divide(_shift(coeffs, 1), 2 * n + 1)

    return _divide(_nested(N, N, step), 1)


def f_series(N: int) -> QSeries:
    """Coefficients of f(q) = sum q^{n^2} / prod_{j=1}^{n} (1 + q^j)^2."""
    _check_order(N)
    top = math.isqrt(N)

    def step(n: int, coeffs: QSeries) -> QSeries:
        coeffs = _shift(coeffs, 2 * n - 1)
        _divide(coeffs, n, sign=1)
        return _divide(coeffs, n, sign=1)

    return _nested(N, top, step)


def parity_check(coeffs: Sequence[int]) -> List[int]:
    """Odd n whose coefficient is odd; omega(n) is even for every odd n."""
    return [n for n in range(1, len(coeffs), 2) if coeffs[n] % 2]


def chi12(x: int) -> int:
    """Kronecker symbol (12/x)."""
    if math.gcd(x, 6) != 1:
        return 0
    return 1 if x % 12 in (1, 11) else -1


def _residues(k: int, n: int) -> List[int]:
    modulus = 24 * k
    target = (1 - 24 * n) % modulus
    return [x for x in range(modulus) if (x * x) % modulus == target]


def a_kn_complex(k: int, n: int):
    """The full complex sum behind A_k(n); its imaginary part cancels in conjugate pairs.

    Raises:
        InvalidInputError: If k < 1
    """
    if k < 1:
        raise InvalidInputError(f"A_k(n) needs k >= 1, got k={k}")
    if MPMATH_AVAILABLE:
        total = mp.mpc(0)
        for x in _residues(k, n):
            total += chi12(x) * mp.expjpi(mp.mpf(x) / (6 * k))
        return total * mp.sqrt(mp.mpf(k) / 12) / 2
    total = complex(0)
    for x in _residues(k, n):
        total += chi12(x) * complex(math.cos(math.pi * x / (6 * k)), math.sin(math.pi * x / (6 * k)))
    return total * math.sqrt(k / 12) / 2


def a_kn(k: int, n: int):
    """A_k(n) = 1/2 sqrt(k/12) sum_{x mod 24k, x^2 = 1-24n} chi_12(x) e(x/12k).

    Returns:
        The real value (an mpmath mpf when mpmath is installed)
    """
    return a_kn_complex(k, n).real


def _bessel_half(z):
    if MPMATH_AVAILABLE:
        return mp.besseli(mp.mpf(1) / 2, z)
    return math.sqrt(2 / (math.pi * z)) * math.sinh(z)


def garthwaite_partial_sum(n: int, k_max: int = GARTHWAITE_K_MAX):
    """Partial sum over k = 1..k_max of Garthwaite's exact formula for omega(n).

    Formula:
        omega(n) = pi/(2 sqrt 2) (3n+2)^{-1/4}
                   * sum_k (-1)^{k-1} A_{2k-1}(nk - 3k(k-1)/2)/(2k-1) * I_{1/2}(pi sqrt(3n+2)/(6k-3))
    """
    if n < 0 or k_max < 1:
        raise InvalidInputError("Garthwaite sum needs n >= 0 and k_max >= 1", details=[f"n={n}", f"k_max={k_max}"])
    if MPMATH_AVAILABLE:
        with mp.workdps(GARTHWAITE_DPS):
            root = mp.sqrt(3 * n + 2)
            total = mp.mpf(0)
            for k in range(1, k_max + 1):
                sign = 1 if k % 2 else -1
                arg = n * k - 3 * k * (k - 1) // 2
                total += sign * a_kn(2 * k - 1, arg) / (2 * k - 1) * _bessel_half(mp.pi * root / (6 * k - 3))
            return +(mp.pi / (2 * mp.sqrt(2)) * (3 * n + 2) ** (-mp.mpf(1) / 4) * total)
    logger.debug("mpmath not installed; evaluating Garthwaite's formula in double precision")
    root = math.sqrt(3 * n + 2)
    total = 0.0
    for k in range(1, k_max + 1):
        sign = 1 if k % 2 else -1
        arg = n * k - 3 * k * (k - 1) // 2
        total += sign * a_kn(2 * k - 1, arg) / (2 * k - 1) * _bessel_half(math.pi * root / (6 * k - 3))
    return math.pi / (2 * math.sqrt(2)) * (3 * n + 2) ** -0.25 * total


def garthwaite_omega(n: int, k_max: int = GARTHWAITE_K_MAX) -> int:
    """omega(n) by rounding the truncated exact formula.

    Raises:
        NoConvergenceError: If the partial sum is farther than ROUNDING_GUARD from an integer
    """
    value = garthwaite_partial_sum(n, k_max)
    nearest = int(round(float(value)))
    distance = abs(float(value - nearest))
    if distance > ROUNDING_GUARD:
        raise NoConvergenceError(
            f"Garthwaite partial sum for omega({n}) did not settle",
            details=[f"k_max={k_max}", f"value={value}", f"distance={distance}"],
        )
    return nearest


def omega_genus(g: int, series: Optional[Sequence[int]] = None) -> int:
    """omega_g = omega(g - 2)."""
    if g < 2:
        raise InvalidInputError(f"omega_g needs g >= 2, got {g}")
    series = series if series is not None else omega_series(g - 2)
    return series[g - 2]


def omega_pa(count: int) -> Tuple[List[int], List[int]]:
    """p_omega(0..count-1) and a_omega(0..count-1).

    Step m (m >= 1) reads omega_{2m} and omega_{2m+1}:

    Formula:
        p(m-1) = omega_{2m+1}/2 - sum_{i=0}^{m-2} (p(i) - a(3i-2m-1)) + a(m-4)
        a(m-3) = p(m-1) - omega_{2m} + 2 sum_{i=0}^{m-2} (p(i) - a(3i-2m))

    with a(n) = 0 for n <= 0, which the first three steps must reproduce.

    Raises:
        IntegralityError: If omega_{2m+1} is odd
        VerificationError: If a step with m <= 3 yields a nonzero a(m-3)
    """
    if count < 1:
        raise InvalidInputError(f"need at least one term, got {count}")
    steps = count + 2
    omega = omega_series(2 * steps - 1)
    p: List[int] = []
    a_pos: Dict[int, int] = {}

    def a(n: int) -> int:
        return a_pos.get(n, 0) if n > 0 else 0

    for m in range(1, steps + 1):
        odd = omega[2 * m - 1]
        if odd % 2:
            raise IntegralityError(f"omega_{2 * m + 1} = {odd} is odd", details=[f"m={m}"])
        p_next = odd // 2 - sum(p[i] - a(3 * i - 2 * m - 1) for i in range(m - 1)) + a(m - 4)
        p.append(p_next)
        a_next = p_next - omega[2 * m - 2] + 2 * sum(p[i] - a(3 * i - 2 * m) for i in range(m - 1))
        if m - 3 <= 0:
            if a_next:
                raise VerificationError(
                    "decomposition is inconsistent with a(n) = 0 for n <= 0",
                    details=[f"m={m}", f"a({m - 3})={a_next}"],
                )
        else:
            a_pos[m - 3] = a_next
    return p[:count], [a(n) for n in range(count)]


def profile_from_sequences(g: int, p: Sequence[int], a: Sequence[int]) -> List[int]:
    """omega_g^k = p(k) - a(3k - g) for k <= (g-2)/2, mirrored above."""
    if g < 2:
        raise InvalidInputError(f"profile needs g >= 2, got {g}")

    def a_at(n: int) -> int:
        return a[n] if n > 0 else 0

    half = [p[k] - a_at(3 * k - g) for k in range((g - 2) // 2 + 1)]
    return [half[min(k, g - 2 - k)] for k in range(g - 1)]


def omega_decomposition(G: int) -> Tuple[List[int], List[int], Dict[int, List[int]]]:
    """p_omega, a_omega and the profiles omega_g^k for 2 <= g <= G.

    The sequences carry max(G, 18) terms.
    """
    if G < 2:
        raise InvalidInputError(f"decomposition needs G >= 2, got {G}")
    p, a = omega_pa(max(G, 18))
    profiles = {g: profile_from_sequences(g, p, a) for g in range(2, G + 1)}
    return p, a, profiles


def faber_a_sequence(profiles: Dict[int, Sequence[int]]) -> Dict[int, int]:
    """Read a(n) = p(k) - R_g^k off rank profiles for 3k - g = n, k <= (g-2)/2.

    Only n >= 1 where every reading agrees is reported.
    """
    readings: Dict[int, set] = {}
    for g, profile in profiles.items():
        for k in range((g - 2) // 2 + 1):
            n = 3 * k - g
            if n >= 1:
                readings.setdefault(n, set()).add(partition_count(k) - profile[k])
    return {n: values.pop() for n, values in sorted(readings.items()) if len(values) == 1}


def conjecture_report(G: int, rank_profiles: Optional[Dict[int, Sequence[int]]] = None) -> dict:
    """Compare Faber ranks with the omega decomposition for 2 <= g <= G.

    Observational only: violations are listed, never raised.
    """
    if rank_profiles is None:
        from app.services.fabering import rank_profile

        rank_profiles = {g: rank_profile(g)[0] for g in range(2, G + 1)}
    p, a_omega, omega_profiles = omega_decomposition(G)
    omega = omega_series(G)

    rows = []
    for g in range(2, G + 1):
        ranks = list(rank_profiles[g])
        rows.append({
            "g": g,
            "R_g": sum(ranks),
            "omega_g": omega[g - 2],
            "profile_equal": ranks == omega_profiles[g],
            "rank_below_omega": [k for k, (r, w) in enumerate(zip(ranks, omega_profiles[g])) if r < w],
        })

    faber_a = faber_a_sequence(rank_profiles)
    return {
        "rows": rows,
        "total_violations": [row["g"] for row in rows if row["R_g"] < row["omega_g"]],
        "profile_violations": [row["g"] for row in rows if row["rank_below_omega"]],
        "partition_violations": [n for n in range(len(p)) if partition_count(n) < p[n]],
        "faber_a": faber_a,
        "a_violations": [n for n, value in faber_a.items() if n < len(a_omega) and value > a_omega[n]],
    }
