"""Sparse multivariate polynomials with exact rational coefficients.

A ``SymPoly`` in n variables stores only nonzero terms, keyed by exponent
tuples of length n. It carries the n-point functions F_g and G_g.
"""
import itertools
from fractions import Fraction
from typing import Dict, Iterator, Optional, Sequence, Tuple, Union

from app.core.errors import DivisibilityError, InvalidInputError

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


class SymPoly:
    """Polynomial over Q in the variables x_1, ..., x_n."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Exponent, Scalar]] = None):
        if nvars < 0:
            raise InvalidInputError(f"number of variables must be >= 0, got {nvars}")
        self.nvars = nvars
        self._terms: Dict[Exponent, Fraction] = {}
        for exps, coef in (terms or {}).items():
            if len(exps) != nvars:
                raise InvalidInputError(
                    "exponent vector has the wrong length",
                    details=[f"expected {nvars}, got {exps}"],
                )
            if coef:
                self._terms[tuple(exps)] = Fraction(coef)

    @classmethod
    def zero(cls, nvars: int) -> "SymPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, value: Scalar, nvars: int) -> "SymPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "SymPoly":
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def sum_of_vars(cls, nvars: int, positions: Optional[Sequence[int]] = None) -> "SymPoly":
        """x_{i_1} + ... + x_{i_k} over ``positions`` (all variables by default)."""
        if positions is None:
            positions = range(nvars)
        return cls.power_sum(1, nvars, positions)

    @classmethod
    def power_sum(cls, k: int, nvars: int, positions: Optional[Sequence[int]] = None) -> "SymPoly":
        if positions is None:
            positions = range(nvars)
        terms = {}
        for i in positions:
            exps = [0] * nvars
            exps[i] = k
            terms[tuple(exps)] = terms.get(tuple(exps), 0) + 1
        return cls(nvars, terms)

    # --- container protocol -------------------------------------------------

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SymPoly.constant(other, self.nvars)
        return isinstance(other, SymPoly) and self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps in sorted(self._terms, reverse=True):
            coef = self._terms[exps]
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(coef))
            elif coef == 1:
                parts.append(mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts)

    # --- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "SymPoly":
        if isinstance(other, SymPoly):
            if other.nvars != self.nvars:
                raise InvalidInputError(
                    "polynomials live in different variable sets",
                    details=[f"{self.nvars} vs {other.nvars} variables"],
                )
            return other
        if isinstance(other, (int, Fraction)):
            return SymPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other) -> "SymPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self._terms)
        for exps, coef in other._terms.items():
            value = result.get(exps, 0) + coef
            if value:
                result[exps] = value
            else:
                result.pop(exps, None)
        return SymPoly(self.nvars, result)

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        return SymPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "SymPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "SymPoly":
        return (-self) + other

    def __mul__(self, other) -> "SymPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return SymPoly(self.nvars)
            return SymPoly(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                result[exps] = result.get(exps, 0) + c1 * c2
        return SymPoly(self.nvars, result)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "SymPoly":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        if not scalar:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (Fraction(1) / Fraction(scalar))

    def __pow__(self, exponent: int) -> "SymPoly":
        if exponent < 0:
            raise InvalidInputError(f"negative polynomial power {exponent}")
        result = SymPoly.constant(1, self.nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # --- structure ----------------------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def homogeneous_part(self, degree: int) -> "SymPoly":
        return SymPoly(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == degree})

    def truncate(self, max_degree: int) -> "SymPoly":
        return SymPoly(self.nvars, {e: c for e, c in self._terms.items() if sum(e) <= max_degree})

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degrees = {sum(e) for e in self._terms}
        if degree is None:
            return len(degrees) <= 1
        return degrees <= {degree}

    def is_symmetric(self) -> bool:
        """Invariance under the transpositions (1 2) and (1 2 ... n) generates S_n."""
        if self.nvars < 2:
            return True
        swap = (1, 0) + tuple(range(2, self.nvars))
        cycle = tuple(range(1, self.nvars)) + (0,)
        return self.permute(swap) == self and self.permute(cycle) == self

    def permute(self, order: Sequence[int]) -> "SymPoly":
        """New polynomial whose variable i is the old variable order[i]."""
        return SymPoly(self.nvars, {tuple(e[j] for j in order): c for e, c in self._terms.items()})

    def embed(self, nvars: int, positions: Sequence[int]) -> "SymPoly":
        """Rename variable j to variable positions[j] of an nvars-variable ring."""
        if len(positions) != self.nvars:
            raise InvalidInputError(
                "embedding needs one position per variable",
                details=[f"{self.nvars} variables, {len(positions)} positions"],
            )
        result = {}
        for exps, coef in self._terms.items():
            target = [0] * nvars
            for j, e in zip(positions, exps):
                target[j] += e
            result[tuple(target)] = coef
        return SymPoly(nvars, result)

    def scale_variable(self, index: int, factor: Scalar) -> "SymPoly":
        """Substitute x_index -> factor * x_index."""
        factor = Fraction(factor)
        return SymPoly(self.nvars, {e: c * factor ** e[index] for e, c in self._terms.items()})

    def divide(self, divisor: "SymPoly") -> "SymPoly":
        """Exact quotient self / divisor.

        Division with remainder on lex-leading terms; for a single divisor
        the remainder is zero exactly when the division is exact.

        Raises:
            DivisibilityError: If divisor does not divide self
        """
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        lead_exps = max(divisor._terms)
        lead_coef = divisor._terms[lead_exps]
        remainder = dict(self._terms)
        quotient: Dict[Exponent, Fraction] = {}
        while remainder:
            exps = max(remainder)
            shift = tuple(a - b for a, b in zip(exps, lead_exps))
            if any(s < 0 for s in shift):
                raise DivisibilityError(
                    "polynomial division left a remainder",
                    details=[f"divisor: {divisor!r}", f"stuck at monomial {exps}"],
                )
            factor = remainder[exps] / lead_coef
            quotient[shift] = factor
            for d_exps, d_coef in divisor._terms.items():
                key = tuple(a + b for a, b in zip(shift, d_exps))
                value = remainder.get(key, 0) - factor * d_coef
                if value:
                    remainder[key] = value
                else:
                    remainder.pop(key, None)
        return SymPoly(self.nvars, quotient)


def exponent_vectors(nvars: int, degree: int) -> Iterator[Exponent]:
    """Every exponent vector in nvars variables with the given total degree."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(degree + nvars - 2 - prev)
        yield tuple(exps)
