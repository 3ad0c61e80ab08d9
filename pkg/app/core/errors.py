"""Domain exceptions and the unified error envelope."""
from pydantic import ValidationError


class InvalidInputError(ValueError):
    """Raised when arguments violate the hypotheses of an operation."""
    def __init__(self, message: str, details: list = None):
        super().__init__(message)
        self.details = details or []


class UnstableModuliError(InvalidInputError):
    """Raised when (g, n) does not satisfy 2g - 2 + n > 0 where stability is required."""


class DivisibilityError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""
    def __init__(self, message: str, details: list = None):
        super().__init__(message)
        self.details = details or []


class IntegralityError(ArithmeticError):
    """Raised when a recursion that must produce integers does not."""
    def __init__(self, message: str, details: list = None):
        super().__init__(message)
        self.details = details or []


class NoConvergenceError(ValueError):
    """Raised when a truncated numerical series is not close enough to an integer."""
    def __init__(self, message: str, details: list = None):
        super().__init__(message)
        self.details = details or []


class LimitExceededError(ValueError):
    """Raised when a request exceeds a configured resource limit."""
    def __init__(self, message: str, details: list = None):
        super().__init__(message)
        self.details = details or []


class CacheFormatError(ValueError):
    """Raised when a cache file cannot be parsed."""
    def __init__(self, message: str, details: list = None):
        super().__init__(message)
        self.details = details or []


class VerificationError(AssertionError):
    """Raised when a cross-check suite finds a mismatch."""
    def __init__(self, message: str, details: list = None):
        super().__init__(message)
        self.details = details or []


# Order matters: subclasses before their bases.
ERROR_CODES = [
    (UnstableModuliError, "UNSTABLE"),
    (InvalidInputError, "INVALID_INPUT"),
    (ValidationError, "VALIDATION_ERROR"),
    (DivisibilityError, "DIVISIBILITY"),
    (IntegralityError, "INTEGRALITY"),
    (NoConvergenceError, "NO_CONVERGENCE"),
    (LimitExceededError, "LIMIT_EXCEEDED"),
    (CacheFormatError, "CACHE_FORMAT"),
    (VerificationError, "VERIFICATION_FAILED"),
]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_LIMIT = 3

error_code_to_exit_code = {
    "UNSTABLE": EXIT_USAGE,
    "INVALID_INPUT": EXIT_USAGE,
    "VALIDATION_ERROR": EXIT_USAGE,
    "CACHE_FORMAT": EXIT_USAGE,
    "DIVISIBILITY": EXIT_VERIFY,
    "INTEGRALITY": EXIT_VERIFY,
    "NO_CONVERGENCE": EXIT_VERIFY,
    "VERIFICATION_FAILED": EXIT_VERIFY,
    "LIMIT_EXCEEDED": EXIT_LIMIT,
}


def error_code_for(exc: BaseException) -> str:
    """Map an exception to its machine-readable error code."""
    for cls, code in ERROR_CODES:
        if isinstance(exc, cls):
            return code
    return "INTERNAL_ERROR"


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the process exit code."""
    return error_code_to_exit_code.get(error_code_for(exc), EXIT_USAGE)


def error_envelope(exc: BaseException) -> dict:
    """Wrap an exception in the standard error envelope.

    The shape is:
    {
        "ok": false,
        "error": { "code": "...", "message": "...", "details": [...] }
    }
    """
    code = error_code_for(exc)
    if isinstance(exc, ValidationError):
        details: list[str] = []
        for error in exc.errors():
            field = " -> ".join(str(loc) for loc in error["loc"])
            details.append(f"{field}: {error['msg']}")
        message = "Request validation failed"
    else:
        details = list(getattr(exc, "details", []) or [])
        message = str(exc)

    return {
        "ok": False,
        "error": {
            "code": code,
            "message": message,
            "details": details,
        },
    }
