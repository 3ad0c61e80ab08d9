"""Shared fixtures: a fresh memo store per test and loaders for the published tables."""
from fractions import Fraction
from pathlib import Path

import pytest

from app.core.cache import clear_all

RESOURCES = Path(__file__).parent / "resources"


def _data_lines(name):
    with open(RESOURCES / name, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line and not line.startswith("#"):
                yield line


def _int_rows(name):
    rows = {}
    for line in _data_lines(name):
        key, _, values = line.partition(":")
        rows[int(key)] = [int(v) for v in values.split()]
    return rows


def _rspin_rows(name):
    entries = []
    for line in _data_lines(name):
        g, insertions, value = (part.strip() for part in line.split("|"))
        pairs = tuple(tuple(int(x) for x in pair.split(":")) for pair in insertions.split())
        entries.append((int(g), pairs, Fraction(value)))
    return entries


@pytest.fixture(autouse=True)
def fresh_memo(tmp_path, monkeypatch):
    """Start every test with empty memo tables and a private cache file."""
    clear_all()
    monkeypatch.setenv("MODULI_CACHE_PATH", str(tmp_path / "cache.txt"))
    yield
    clear_all()


@pytest.fixture
def faber_ranks():
    return _int_rows("faber_ranks.txt")


@pytest.fixture
def omega_profiles():
    return _int_rows("omega_profiles.txt")


@pytest.fixture
def faber_a():
    return {n: values[0] for n, values in _int_rows("faber_a.txt").items()}


@pytest.fixture
def rspin3_table():
    return _rspin_rows("rspin3.txt")


@pytest.fixture
def rspin4_table():
    return _rspin_rows("rspin4.txt")
