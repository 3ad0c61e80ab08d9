"""Cross-check suites.

Every suite compares two independent routes, or a route against a published
value, with exact equality. ``bound`` caps the suite's size parameter (its
meaning is listed in SUITES); the defaults are the full acceptance ranges.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from app.core.errors import InvalidInputError, NoConvergenceError
from app.models.tables import SuiteReport
from app.services import reference
from app.services.descendent import effective_recursion, is_stable, psi_correlator
from app.services.exact import MultiIndex, bernoulli, double_factorial, partitions
from app.services.fabering import rank_profile
from app.services.hodge import closed_formula_oracle, elsv_hurwitz, fa2_check, fa3_identity_check, hodge_integral, kl_invert
from app.services.mocktheta import (
    conjecture_report,
    f_series,
    garthwaite_omega,
    omega_decomposition,
    omega_series,
    omega_series_alt,
    parity_check,
)
from app.services.npoint import coeff_theorem_check, npoint_F, npoint_F_via_K, npoint_G, three_point_closed, two_point_closed
from app.services.polynomials import SymPoly, exponent_vectors
from app.services.rspin import rspin_correlator
from app.services.wpvolumes import alpha, alpha_relation, kappa_psi_correlator, volume

logger = logging.getLogger(__name__)

# n-point polynomials grow with 2^n splittings; larger n is covered by the DVV suites.
NPOINT_MAX_VARIABLES = 5
ELSV_MAX_POINTS = 4


class _Tally:
    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.failures: List[str] = []

    def expect(self, label: str, actual, expected) -> None:
        self.checked += 1
        if actual != expected:
            self.failures.append(f"{label}: got {actual}, expected {expected}")
            logger.info("%s: %s failed", self.name, label)

    def report(self) -> SuiteReport:
        return SuiteReport(name=self.name, ok=not self.failures, checked=self.checked, failures=self.failures)


def _stable_shapes(bound: int, max_points: Optional[int] = None):
    """Every stable (g, n) with n >= 1 and 3g - 3 + n <= bound."""
    for g in range(bound // 3 + 2):
        for n in range(1, bound - 3 * g + 4):
            if max_points is not None and n > max_points:
                break
            if is_stable(g, n) and 3 * g - 3 + n <= bound:
                yield g, n


def _sorted_tuples(n: int, total: int):
    """Exponent vectors of length n and given sum, largest entry first."""
    for parts in partitions(total):
        if len(parts) <= n:
            yield tuple(parts) + (0,) * (n - len(parts))


def dvv_vs_effective(bound: int) -> SuiteReport:
    tally = _Tally("dvv-vs-effective")
    for g, n in _stable_shapes(bound):
        for d in _sorted_tuples(n, 3 * g - 3 + n):
            tally.expect(f"<tau{list(d)}>_{g}", effective_recursion(g, d), psi_correlator(g, d))
    return tally.report()


def dvv_vs_npoint(bound: int) -> SuiteReport:
    tally = _Tally("dvv-vs-npoint")
    for g, n in _stable_shapes(bound, NPOINT_MAX_VARIABLES):
        F = npoint_F(g, n)
        tally.expect(f"F_{g} via K ({n} variables)", npoint_F_via_K(g, n), F)
        for d in exponent_vectors(n, 3 * g - 3 + n):
            tally.expect(f"[x^{list(d)}] F_{g}", F.coefficient(d), psi_correlator(g, d))
    return tally.report()


def npoint_closed(bound: int) -> SuiteReport:
    """bound is the largest genus."""
    tally = _Tally("npoint-closed")
    x_plus_y = SymPoly.sum_of_vars(2)
    two = two_point_closed(3 * bound - 1) if bound else {}
    for g in range(1, bound + 1):
        tally.expect(f"(x+y) G_{g}(x,y)", npoint_G(g, 2) * x_plus_y, two[g])
    three = three_point_closed(3 * bound)
    for g in range(bound + 1):
        G = npoint_G(g, 3)
        tally.expect(f"G_{g}(x,y,z)", G, three[g])
        tally.expect(f"G_{g}(x,y,z) recursion route", npoint_G(g, 3, "recursion"), G)
    return tally.report()


def npoint_coeff(bound: int) -> SuiteReport:
    """bound is the largest genus; the number of extra variables runs to 4."""
    tally = _Tally("npoint-coeff")
    for g in range(bound + 1):
        for n in range(1, 5):
            if not is_stable(g, n + 1):
                continue
            for case in ("i", "ii", "iii"):
                tally.expect(f"case {case} at g={g}, n={n}", coeff_theorem_check(g, n, case), True)
    return tally.report()


def hodge_closed_forms(bound: int) -> SuiteReport:
    """bound is the largest genus; points run to 3."""
    tally = _Tally("hodge-closed-forms")
    for g in range(1, bound + 1):
        for n in range(0, 4):
            if not is_stable(g, n):
                continue
            if n:
                for d in _sorted_tuples(n, 2 * g - 3 + n):
                    tally.expect(
                        f"<tau{list(d)} lambda_{g}>_{g}",
                        hodge_integral(g, psi=d, lambdas=(g,)),
                        closed_formula_oracle("lg", g, d),
                    )
            if g < 2:
                continue
            for extra in _sorted_tuples(n, g - 2):
                d = tuple(x + 1 for x in extra)
                value, closed = fa2_check(g, d)
                tally.expect(f"<tau{list(d)} lambda_{g} lambda_{g - 1}>_{g}", value, closed)
    for g in range(2, min(bound, 4) + 1):
        tally.expect(
            f"<lambda_{g - 1}^3>_{g}",
            hodge_integral(g, lambdas=(g - 1,) * 3),
            closed_formula_oracle("l3g", g),
        )
    return tally.report()


def faber_fa3(bound: int) -> SuiteReport:
    """bound is the largest genus; points run to 4."""
    tally = _Tally("faber-fa3")
    for g in range(1, bound + 1):
        for n in range(1, 5):
            excess = g - 2
            if excess < 0:
                continue
            for extra in _sorted_tuples(n, excess):
                d = tuple(x + 1 for x in extra)
                lhs, rhs = fa3_identity_check(g, d)
                tally.expect(f"identity at g={g}, d={list(d)}", lhs, rhs)
    return tally.report()


def elsv_roundtrip(bound: int) -> SuiteReport:
    tally = _Tally("elsv-roundtrip")
    tally.expect("H_{1,(1)}", elsv_hurwitz(1, (1,)), Fraction(0))
    for g, n in _stable_shapes(bound, ELSV_MAX_POINTS):
        for d in _sorted_tuples(n, 3 * g - 3 + n):
            tally.expect(f"inverted <tau{list(d)}>_{g}", kl_invert(g, d), psi_correlator(g, d))
    return tally.report()


def _alpha_closed(ell: int) -> Fraction:
    """alpha of kappa_1^ell from Bernoulli numbers."""
    sign = 1 if ell % 2 else -1
    return sign * (2 ** (2 * ell) - 2) * bernoulli(2 * ell) / double_factorial(2 * ell - 1)


def wp_routes(bound: int) -> SuiteReport:
    """bound is the largest genus; points run to 3 and kappa monomials have length <= 3."""
    tally = _Tally("wp-routes")
    tally.expect("<tau_0 kappa_1>_1", kappa_psi_correlator(1, MultiIndex.delta(1), (0,)), Fraction(1, 24))
    for ell in range(1, 9):
        tally.expect(f"alpha(kappa_1^{ell})", alpha(MultiIndex.delta(1, ell)), _alpha_closed(ell))
        tally.expect(f"alpha(kappa_{ell})", alpha(MultiIndex.delta(ell)), Fraction(1, double_factorial(2 * ell + 1)))
    for weight in range(1, 5):
        for parts in partitions(weight):
            b = MultiIndex.from_parts(parts)
            tally.expect(f"alpha relation at {b}", alpha_relation(b), Fraction(0))

    for g in range(bound + 1):
        for n in range(4):
            if not is_stable(g, n):
                continue
            dim = 3 * g - 3 + n
            for parts in partitions(dim):
                if not parts or len(parts) > 3:
                    continue
                b = MultiIndex.from_parts(parts)
                expected = volume(g, n, b, "kappa")
                for route in ("volume", "mixed"):
                    tally.expect(f"V_{g},{n}({b}) by {route}", volume(g, n, b, route), expected)
    return tally.report()


def faber_table(bound: int) -> SuiteReport:
    """bound is the largest genus, at most 23."""
    tally = _Tally("faber-table")
    for g in range(2, min(bound, max(reference.FABER_RANKS)) + 1):
        profile, _ = rank_profile(g)
        tally.expect(f"ranks at g={g}", profile, reference.FABER_RANKS[g])
        tally.expect(f"symmetry at g={g}", profile, profile[::-1])
    return tally.report()


def mock_series(bound: int) -> SuiteReport:
    """bound is the series order N."""
    tally = _Tally("mock-series")
    N = max(bound, 28)
    omega = omega_series(N)
    tally.expect(f"both expansions to q^{N}", omega_series_alt(N), omega)
    count = len(reference.OMEGA_COEFFICIENTS)
    tally.expect(f"coefficients to q^{count - 1}", omega[:count], reference.OMEGA_COEFFICIENTS)
    for g, value in reference.OMEGA_GENUS.items():
        tally.expect(f"omega_{g}", omega[g - 2], value)
    tally.expect("odd coefficients", parity_check(omega), [])
    tally.expect("f(q)", f_series(len(reference.F_COEFFICIENTS) - 1), reference.F_COEFFICIENTS)
    return tally.report()


def mock_garthwaite(bound: int) -> SuiteReport:
    """bound is the largest n."""
    tally = _Tally("mock-garthwaite")
    omega = omega_series(bound)
    for n in range(bound + 1):
        try:
            value = garthwaite_omega(n)
        except NoConvergenceError as exc:
            tally.checked += 1
            tally.failures.append(f"omega({n}): {exc}")
            continue
        tally.expect(f"omega({n})", value, omega[n])
    return tally.report()


def mock_decomposition(bound: int) -> SuiteReport:
    """bound is the largest genus compared against computed Faber ranks."""
    tally = _Tally("mock-decomposition")
    top = max(reference.OMEGA_PROFILES)
    p, a, profiles = omega_decomposition(top)
    tally.expect("p_omega", p[:len(reference.P_OMEGA)], reference.P_OMEGA)
    tally.expect("a_omega", a[:len(reference.A_OMEGA)], reference.A_OMEGA)
    for g in range(18, top + 1):
        tally.expect(f"omega profile at g={g}", profiles[g], reference.OMEGA_PROFILES[g])

    report = conjecture_report(max(bound, 2))
    for row in report["rows"]:
        if row["g"] <= 17:
            tally.expect(f"R_g^k = omega_g^k at g={row['g']}", row["profile_equal"], True)
    tally.expect("R_g >= omega_g", report["total_violations"], [])
    tally.expect("R_g^k >= omega_g^k", report["profile_violations"], [])
    tally.expect("p_omega(n) <= p(n)", report["partition_violations"], [])
    for n, value in report["faber_a"].items():
        if n in reference.FABER_A:
            tally.expect(f"a({n}) from ranks", value, reference.FABER_A[n])
    tally.expect("a(n) <= a_omega(n)", report["a_violations"], [])
    return tally.report()


def rspin_tables(bound: int) -> SuiteReport:
    """bound is the largest genus of table entries; the r = 2 check runs to 3g - 3 + s <= 8."""
    tally = _Tally("rspin-tables")
    for r, entries in reference.RSPIN_TABLES.items():
        for g, insertions, expected in entries:
            if g > bound:
                continue
            tally.expect(f"r={r} <tau{list(insertions)}>_{g}", rspin_correlator(r, g, insertions), expected)
    for g, s in _stable_shapes(min(8, 3 * bound + 2), 5):
        for d in _sorted_tuples(s, 3 * g - 3 + s):
            tally.expect(
                f"r=2 <tau{list(d)}>_{g}",
                rspin_correlator(2, g, [(x, 0) for x in d]),
                psi_correlator(g, d),
            )
    return tally.report()


SUITES: Dict[str, Tuple[Callable[[int], SuiteReport], int, str]] = {
    "dvv-vs-effective": (dvv_vs_effective, 12, "3g - 3 + n"),
    "dvv-vs-npoint": (dvv_vs_npoint, 10, "3g - 3 + n"),
    "npoint-closed": (npoint_closed, 4, "genus"),
    "npoint-coeff": (npoint_coeff, 4, "genus"),
    "hodge-closed-forms": (hodge_closed_forms, 5, "genus"),
    "faber-fa3": (faber_fa3, 4, "genus"),
    "elsv-roundtrip": (elsv_roundtrip, 8, "3g - 3 + n"),
    "wp-routes": (wp_routes, 3, "genus"),
    "faber-table": (faber_table, 18, "genus"),
    "mock-series": (mock_series, 200, "series order"),
    "mock-garthwaite": (mock_garthwaite, 100, "n"),
    "mock-decomposition": (mock_decomposition, 17, "genus"),
    "rspin-tables": (rspin_tables, 3, "genus"),
}


def run_suite(name: str, bound: Optional[int] = None) -> SuiteReport:
    """Run a suite by name.

    Raises:
        InvalidInputError: If the suite is unknown or the bound is negative
    """
    if name not in SUITES:
        raise InvalidInputError(f"unknown suite {name!r}", details=[f"expected one of {sorted(SUITES)}"])
    suite, default, meaning = SUITES[name]
    bound = default if bound is None else bound
    if bound < 0:
        raise InvalidInputError(f"bound ({meaning}) must be >= 0, got {bound}")
    logger.info("Running %s with %s <= %d", name, meaning, bound)
    return suite(bound)
