"""Tests for memo tables and the on-disk cache."""
from fractions import Fraction

import pytest

from app.core.cache import CacheStore, clear_all, decode_key, encode_key, memo_table
from app.core.config import CACHE_VERSION
from app.core.errors import CacheFormatError
from app.services.descendent import psi_correlator


def test_memo_table_is_shared():
    """Test that a namespace maps to one table and the first insert wins."""
    table = memo_table("test-shared")
    assert memo_table("test-shared") is table
    assert table.put("k", 1) == 1
    assert table.put("k", 2) == 1
    assert "k" in table
    assert len(table) == 1


def test_key_encoding():
    """Test keys survive the text encoding."""
    key = (2, (2, 2, 2))
    assert encode_key(key) == "(2,(2,2,2))"
    assert decode_key(encode_key(key)) == key


def test_save_and_load(tmp_path):
    """Test that computed values come back after clearing the memo tables."""
    store = CacheStore(tmp_path / "cache.txt")
    assert psi_correlator(2, (2, 2, 2)) == Fraction(7, 240)
    assert store.save() >= 1

    lines = (tmp_path / "cache.txt").read_text(encoding="utf-8").splitlines()
    assert lines[0] == f"# moduli-intersections cache v{CACHE_VERSION}"
    assert "psi:(2,(2,2,2))=7/240" in lines

    clear_all()
    assert memo_table("psi").get((2, (2, 2, 2))) is None
    assert store.load() == len(lines) - 1
    assert memo_table("psi").get((2, (2, 2, 2))) == Fraction(7, 240)


def test_missing_file_loads_nothing(tmp_path):
    """Test that a missing cache is not an error."""
    assert CacheStore(tmp_path / "absent.txt").load() == 0


def test_version_mismatch_discards_file(tmp_path):
    """Test that another cache version is ignored."""
    path = tmp_path / "cache.txt"
    path.write_text("# moduli-intersections cache v0\npsi:(1,(1,))=1/24\n", encoding="utf-8")
    assert CacheStore(path).load() == 0
    assert memo_table("psi").get((1, (1,))) is None


def test_corrupt_lines_are_skipped(tmp_path):
    """Test that unparseable lines are skipped and the rest is loaded."""
    path = tmp_path / "cache.txt"
    store = CacheStore(path)
    path.write_text(f"{store.header}\ngarbage\npsi:(1,(1,))=1/24\npsi:(0,(0,0,0))=x\n", encoding="utf-8")
    assert store.load() == 1
    assert memo_table("psi").get((1, (1,))) == Fraction(1, 24)


def test_parse_line_errors():
    """Test CacheFormatError on malformed entries."""
    assert CacheStore.parse_line("psi:(1,(1,))=1/24") == ("psi", (1, (1,)), Fraction(1, 24))
    with pytest.raises(CacheFormatError):
        CacheStore.parse_line("no separators")
    with pytest.raises(CacheFormatError):
        CacheStore.parse_line("psi:(1,(1,)=1/24")


def test_non_persistent_tables_are_not_saved(tmp_path):
    """Test that polynomial tables stay in memory."""
    memo_table("test-volatile", persistent=False).put("k", Fraction(1))
    store = CacheStore(tmp_path / "cache.txt")
    store.save()
    assert "test-volatile" not in (tmp_path / "cache.txt").read_text(encoding="utf-8")


def test_info_and_clear(tmp_path):
    """Test info counts entries and clear removes the file."""
    store = CacheStore(tmp_path / "cache.txt")
    psi_correlator(1, (1,))
    written = store.save()
    info = store.info()
    assert info["entries"] == written
    assert info["version"] == CACHE_VERSION
    store.clear()
    assert store.info()["entries"] == 0
    store.clear()
