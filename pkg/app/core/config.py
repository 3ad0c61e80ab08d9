"""Configuration and constants for the application."""
import os
from pathlib import Path

# Persistent memo store
CACHE_VERSION = "4"
CACHE_ENV_VAR = "MODULI_CACHE_PATH"


def default_cache_path() -> Path:
    """Return the cache location from the environment or the per-user data directory."""
    explicit = os.getenv(CACHE_ENV_VAR)
    if explicit:
        return Path(explicit).expanduser()
    data_home = os.getenv("XDG_DATA_HOME") or os.path.join(Path.home(), ".local", "share")
    return Path(data_home) / "moduli-intersections" / "cache.txt"


# Logging
LOG_LEVEL = os.getenv("MODULI_LOG_LEVEL", "WARNING")

# Constants for guards
MAX_GENUS = int(os.getenv("MODULI_MAX_GENUS", "8"))
MAX_POINTS = int(os.getenv("MODULI_MAX_POINTS", "8"))
MAX_FABER_GENUS = int(os.getenv("MODULI_MAX_FABER_GENUS", "30"))
MAX_SERIES_ORDER = int(os.getenv("MODULI_MAX_SERIES_ORDER", "2000"))
MAX_GARTHWAITE_N = 1000
MAX_RSPIN_GENUS = int(os.getenv("MODULI_MAX_RSPIN_GENUS", "4"))
SUPPORTED_SPIN = (2, 3, 4)

# Mock theta numerics
GARTHWAITE_DPS = 50
GARTHWAITE_K_MAX = 25
ROUNDING_GUARD = 0.25

# Optional mpmath import for the Garthwaite evaluation
try:
    import mpmath as mp
    MPMATH_AVAILABLE = True
except ImportError:
    MPMATH_AVAILABLE = False
    mp = None
