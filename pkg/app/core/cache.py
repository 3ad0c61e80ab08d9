"""Process-wide memo tables and their on-disk store.

Every recursion in the service layer memoizes through a named ``MemoTable``.
Reads are lock-free dict lookups; inserts are serialized by a per-table lock.
Two threads computing the same key at once is harmless: both produce the
same value and the first insert wins.

``CacheStore`` persists the rational-valued tables as diffable text::

    # moduli-intersections cache v4
    psi:(2,(2,2,2))=7/240
"""
import ast
import logging
import os
import tempfile
import threading
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Hashable, Iterator, Tuple

from app.core.config import CACHE_VERSION
from app.core.errors import CacheFormatError

try:
    import fcntl
except ImportError:  # non-POSIX
    fcntl = None

logger = logging.getLogger(__name__)

HEADER_PREFIX = "# moduli-intersections cache v"


class MemoTable:
    """A namespaced memo dictionary with serialized insertion."""

    def __init__(self, namespace: str, persistent: bool = True):
        self.namespace = namespace
        self.persistent = persistent
        self._data: Dict[Hashable, Any] = {}
        self._lock = threading.Lock()

    def get(self, key: Hashable, default: Any = None) -> Any:
        return self._data.get(key, default)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._data

    def __len__(self) -> int:
        return len(self._data)

    def put(self, key: Hashable, value: Any) -> Any:
        """Insert ``value`` unless another thread already did; return the stored value."""
        with self._lock:
            return self._data.setdefault(key, value)

    def items(self) -> Iterator[Tuple[Hashable, Any]]:
        with self._lock:
            snapshot = list(self._data.items())
        return iter(snapshot)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


_registry: Dict[str, MemoTable] = {}
_registry_lock = threading.Lock()


def memo_table(namespace: str, persistent: bool = True) -> MemoTable:
    """Return the process-wide table for ``namespace``, creating it on first use."""
    table = _registry.get(namespace)
    if table is None:
        with _registry_lock:
            table = _registry.setdefault(namespace, MemoTable(namespace, persistent))
    return table


def clear_all() -> None:
    """Drop every memoized value in this process."""
    for table in list(_registry.values()):
        table.clear()


def encode_key(key: Hashable) -> str:
    return repr(key).replace(" ", "")


def decode_key(text: str) -> Hashable:
    return ast.literal_eval(text)


class CacheStore:
    """Line-oriented persistent copy of the rational-valued memo tables."""

    def __init__(self, path):
        self.path = Path(path)

    @property
    def header(self) -> str:
        return f"{HEADER_PREFIX}{CACHE_VERSION}"

    def load(self) -> int:
        """Merge the file into the memo tables; return how many entries were loaded.

        A missing file loads nothing. A version mismatch discards the whole file.
        """
        if not self.path.exists():
            logger.info("No cache file at %s", self.path)
            return 0

        with open(self.path, "r", encoding="utf-8") as handle:
            lines = handle.read().splitlines()

        if not lines or lines[0].strip() != self.header:
            found = lines[0].strip() if lines else "<empty>"
            logger.warning("Cache %s has header %r, expected %r; ignoring it", self.path, found, self.header)
            return 0

        loaded = 0
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                namespace, key, value = self.parse_line(line)
            except CacheFormatError as exc:
                logger.warning("Skipping cache line %d: %s", lineno, exc)
                continue
            memo_table(namespace).put(key, value)
            loaded += 1
        logger.info("Loaded %d cached values from %s", loaded, self.path)
        return loaded

    @staticmethod
    def parse_line(line: str) -> Tuple[str, Hashable, Fraction]:
        namespace, sep, rest = line.partition(":")
        key_text, sep2, value_text = rest.rpartition("=")
        if not sep or not sep2 or not namespace:
            raise CacheFormatError("malformed entry", details=[line])
        try:
            return namespace, decode_key(key_text), Fraction(value_text)
        except (ValueError, SyntaxError, ZeroDivisionError) as exc:
            raise CacheFormatError("unparseable key or value", details=[line, str(exc)])

    def save(self) -> int:
        """Write every persistent table atomically; return the number of entries written."""
        rows = []
        for namespace in sorted(_registry):
            table = _registry[namespace]
            if not table.persistent:
                continue
            for key, value in table.items():
                if isinstance(value, (int, Fraction)):
                    rows.append(f"{namespace}:{encode_key(key)}={Fraction(value)}")
        rows.sort()

        self.path.parent.mkdir(parents=True, exist_ok=True)
        lock_path = self.path.with_suffix(self.path.suffix + ".lock")
        with open(lock_path, "w") as lock_handle:
            if fcntl is not None:
                fcntl.flock(lock_handle, fcntl.LOCK_EX)
            fd, tmp_name = tempfile.mkstemp(dir=self.path.parent, prefix=".cache-")
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(self.header + "\n")
                for row in rows:
                    handle.write(row + "\n")
            os.replace(tmp_name, self.path)
        logger.info("Saved %d cached values to %s", len(rows), self.path)
        return len(rows)

    def clear(self) -> None:
        if self.path.exists():
            self.path.unlink()

    def info(self) -> dict:
        entries = 0
        if self.path.exists():
            with open(self.path, "r", encoding="utf-8") as handle:
                entries = max(0, sum(1 for _ in handle) - 1)
        return {"path": str(self.path), "version": CACHE_VERSION, "entries": entries}
