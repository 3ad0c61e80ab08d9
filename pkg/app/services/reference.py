"""Published values used as oracles by the verification suites and table commands.

tests/resources carries the same data as text fixtures; the two are kept
independent so a typo in one shows up as a failure against the other.
"""
from fractions import Fraction
from typing import Dict, List, Tuple

# R_g^k for 2 <= g <= 23; rows are palindromes.
FABER_RANKS: Dict[int, List[int]] = {
    2: [1],
    3: [1, 1],
    4: [1, 1, 1],
    5: [1, 1, 1, 1],
    6: [1, 1, 2, 1, 1],
    7: [1, 1, 2, 2, 1, 1],
    8: [1, 1, 2, 2, 2, 1, 1],
    9: [1, 1, 2, 3, 3, 2, 1, 1],
    10: [1, 1, 2, 3, 4, 3, 2, 1, 1],
    11: [1, 1, 2, 3, 4, 4, 3, 2, 1, 1],
    12: [1, 1, 2, 3, 5, 5, 5, 3, 2, 1, 1],
    13: [1, 1, 2, 3, 5, 6, 6, 5, 3, 2, 1, 1],
    14: [1, 1, 2, 3, 5, 6, 8, 6, 5, 3, 2, 1, 1],
    15: [1, 1, 2, 3, 5, 7, 9, 9, 7, 5, 3, 2, 1, 1],
    16: [1, 1, 2, 3, 5, 7, 10, 10, 10, 7, 5, 3, 2, 1, 1],
    17: [1, 1, 2, 3, 5, 7, 10, 12, 12, 10, 7, 5, 3, 2, 1, 1],
    18: [1, 1, 2, 3, 5, 7, 11, 13, 16, 13, 11, 7, 5, 3, 2, 1, 1],
    19: [1, 1, 2, 3, 5, 7, 11, 14, 17, 17, 14, 11, 7, 5, 3, 2, 1, 1],
    20: [1, 1, 2, 3, 5, 7, 11, 14, 19, 20, 19, 14, 11, 7, 5, 3, 2, 1, 1],
    21: [1, 1, 2, 3, 5, 7, 11, 15, 20, 24, 24, 20, 15, 11, 7, 5, 3, 2, 1, 1],
    22: [1, 1, 2, 3, 5, 7, 11, 15, 21, 25, 29, 25, 21, 15, 11, 7, 5, 3, 2, 1, 1],
    23: [1, 1, 2, 3, 5, 7, 11, 15, 21, 27, 32, 32, 27, 21, 15, 11, 7, 5, 3, 2, 1, 1],
}

# omega_g^k differs from R_g^k only at these (g, k), mirrored entries included.
_OMEGA_CHANGES: Dict[int, Dict[int, int]] = {
    18: {8: 15},
    21: {9: 23, 10: 23},
    22: {10: 28},
    23: {10: 31, 11: 31},
}


def _omega_profiles() -> Dict[int, List[int]]:
    profiles = {}
    for g, ranks in FABER_RANKS.items():
        row = list(ranks)
        for k, value in _OMEGA_CHANGES.get(g, {}).items():
            row[k] = value
        profiles[g] = row
    return profiles


OMEGA_PROFILES: Dict[int, List[int]] = _omega_profiles()

OMEGA_COEFFICIENTS = [1, 2, 3, 4, 6, 8, 10, 14, 18, 22, 29, 36, 44, 56, 68, 82]
F_COEFFICIENTS = [1, 1, -2, 3, -3, 3, -5, 7, -6, 6]

OMEGA_GENUS = dict(zip(range(18, 31), [101, 122, 146, 176, 210, 248, 296, 350, 410, 484, 566, 660, 772]))
FABER_TOTALS = dict(zip(range(18, 31), [102, 122, 146, 178, 211, 250, 300, 352, 415, 492, 574, 670, 788]))

P_OMEGA = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 41, 56, 75, 100, 132, 172, 225, 289]
A_OMEGA = [0, 1, 1, 2, 3, 5, 7, 10, 13, 18, 25, 34, 44, 58, 74, 97, 125, 160]
FABER_A = dict(zip(range(1, 16), [1, 1, 2, 3, 5, 6, 10, 13, 18, 24, 33, 41, 56, 71, 91]))

RSpinEntry = Tuple[int, Tuple[Tuple[int, int], ...], Fraction]

RSPIN3: List[RSpinEntry] = [
    (1, ((1, 0),), Fraction(1, 12)),
    (1, ((0, 1), (0, 1), (2, 1)), Fraction(1, 36)),
    (1, ((0, 1), (1, 1), (1, 1)), Fraction(1, 36)),
    (2, ((1, 1), (3, 1)), Fraction(11, 4320)),
    (2, ((2, 1), (2, 1)), Fraction(17, 4320)),
    (2, ((0, 1), (0, 1), (5, 0)), Fraction(1, 432)),
    (2, ((0, 1), (1, 1), (4, 0)), Fraction(13, 2160)),
    (2, ((0, 1), (2, 0), (3, 1)), Fraction(1, 108)),
    (2, ((0, 1), (2, 1), (3, 0)), Fraction(23, 2160)),
    (2, ((1, 1), (1, 1), (3, 0)), Fraction(29, 2160)),
    (2, ((1, 1), (2, 0), (2, 1)), Fraction(19, 1080)),
    (3, ((6, 1),), Fraction(1, 31104)),
    (3, ((0, 1), (7, 0)), Fraction(1, 15552)),
    (3, ((1, 1), (6, 0)), Fraction(19, 77760)),
    (3, ((2, 0), (5, 1)), Fraction(103, 217728)),
    (3, ((2, 1), (5, 0)), Fraction(47, 77760)),
    (3, ((3, 0), (4, 1)), Fraction(443, 544320)),
    (3, ((3, 1), (4, 0)), Fraction(67, 77760)),
    (4, ((9, 0),), Fraction(1, 746496)),
    (6, ((14, 1),), Fraction(1, 4837294080)),
    (7, ((17, 0),), Fraction(1, 162533081088)),
]

RSPIN4: List[RSpinEntry] = [
    (1, ((1, 0),), Fraction(1, 8)),
    (1, ((0, 2), (1, 2)), Fraction(1, 96)),
    (1, ((0, 1), (0, 1), (2, 2)), Fraction(1, 32)),
    (1, ((0, 1), (0, 2), (2, 1)), Fraction(1, 24)),
    (1, ((0, 1), (1, 1), (1, 2)), Fraction(1, 24)),
    (1, ((0, 2), (0, 2), (2, 0)), Fraction(1, 48)),
    (2, ((3, 2),), Fraction(3, 2560)),
    (2, ((0, 1), (4, 1)), Fraction(1, 320)),
    (2, ((0, 2), (4, 0)), Fraction(19, 7680)),
    (2, ((1, 1), (3, 1)), Fraction(7, 960)),
    (2, ((1, 2), (3, 0)), Fraction(41, 7680)),
    (2, ((0, 1), (0, 1), (5, 0)), Fraction(13, 2560)),
    (2, ((2, 0), (2, 2)), Fraction(49, 7680)),
    (2, ((0, 1), (1, 1), (4, 0)), Fraction(1, 64)),
    (2, ((2, 1), (2, 1)), Fraction(11, 960)),
    (2, ((0, 1), (2, 1), (3, 0)), Fraction(9, 320)),
    (2, ((1, 1), (1, 1), (3, 0)), Fraction(7, 192)),
    (2, ((1, 1), (2, 0), (2, 1)), Fraction(1, 20)),
    (2, ((0, 2), (2, 2), (2, 2)), Fraction(11, 3072)),
    (2, ((1, 2), (1, 2), (2, 2)), Fraction(7, 1536)),
    (3, ((6, 0),), Fraction(3, 20480)),
    (3, ((2, 0), (5, 0)), Fraction(43, 20480)),
    (3, ((3, 0), (4, 0)), Fraction(7, 2048)),
    (3, ((1, 2), (5, 2)), Fraction(311, 1720320)),
    (3, ((2, 2), (4, 2)), Fraction(67, 172032)),
    (4, ((8, 2),), Fraction(77, 39321600)),
    (5, ((11, 0),), Fraction(19, 104857600)),
]

RSPIN_TABLES: Dict[int, List[RSpinEntry]] = {3: RSPIN3, 4: RSPIN4}
