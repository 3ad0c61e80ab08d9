"""Argument parsing helpers, limit guards and output formatting shared by the commands."""
import csv
import json
import sys
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from app.core.errors import InvalidInputError, LimitExceededError
from app.models.common import ExactValueResponse

FORMATS = ("text", "csv", "records")


def fraction_text(value) -> str:
    """Reduced p/q, or a bare integer when q = 1."""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def int_list(text: str) -> List[int]:
    """Parse "0,0,1" into [0, 0, 1]; the empty string gives []."""
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise InvalidInputError(f"expected comma-separated integers, got {text!r}")


def insertion_list(text: str) -> List[Tuple[int, int]]:
    """Parse "1:0,2:1" into [(1, 0), (2, 1)]."""
    result = []
    for part in text.split(","):
        n, sep, m = part.strip().partition(":")
        if not sep:
            raise InvalidInputError(f"insertion {part!r} must look like n:m")
        try:
            result.append((int(n), int(m)))
        except ValueError:
            raise InvalidInputError(f"insertion {part!r} must look like n:m")
    return result


def genus_range(text: str) -> Tuple[int, int]:
    """Parse "2..12" or "9" into an inclusive range."""
    low, sep, high = text.partition("..")
    try:
        if not sep:
            return int(low), int(low)
        return int(low), int(high)
    except ValueError:
        raise InvalidInputError(f"expected a genus or a range like 2..12, got {text!r}")


def check_limit(name: str, value: int, limit: int) -> None:
    """Raise LimitExceededError when value > limit."""
    if value > limit:
        raise LimitExceededError(
            f"{name} = {value} exceeds the configured limit {limit}",
            details=["raise the limit with the matching MODULI_MAX_* environment variable"],
        )


def _cell(value) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(_cell(v) for v in value)
    if isinstance(value, Fraction):
        return fraction_text(value)
    return str(value)


def emit_value(quantity: str, value, fmt: str) -> None:
    """Print one exact value."""
    response = ExactValueResponse(quantity=quantity, value=fraction_text(value))
    if fmt == "records":
        print(json.dumps(response.model_dump()))
    elif fmt == "csv":
        emit_rows([{"quantity": quantity, "value": response.value}], fmt, ["quantity", "value"])
    else:
        print(response.value)


def emit_rows(rows: Sequence[Dict], fmt: str, columns: Sequence[str]) -> None:
    """Print rows as aligned text, CSV with a header, or one JSON object per line.

    Rationals become p/q strings and lists are joined by commas in text and CSV.
    """
    if fmt == "records":
        for row in rows:
            print(json.dumps({c: _json_value(row[c]) for c in columns}))
        return
    table = [[_cell(row[c]) for c in columns] for row in rows]
    if fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(table)
        return
    widths = [max([len(c)] + [len(r[i]) for r in table]) for i, c in enumerate(columns)]
    print("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
    for r in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())


def _json_value(value):
    if isinstance(value, Fraction):
        return fraction_text(value)
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value
