"""Tests for error codes, exit codes and the error envelope."""
import pytest
from pydantic import ValidationError

from app.core.errors import (
    CacheFormatError,
    DivisibilityError,
    IntegralityError,
    InvalidInputError,
    LimitExceededError,
    NoConvergenceError,
    UnstableModuliError,
    VerificationError,
    error_code_for,
    error_envelope,
    exit_code_for,
)
from app.models.common import ErrorResponse
from app.models.correlators import FaberRankRequest, PsiRequest, RSpinRequest, TableRequest
from app.models.tables import SuiteReport


@pytest.mark.parametrize(
    "exc, code, exit_code",
    [
        (UnstableModuliError("unstable"), "UNSTABLE", 1),
        (InvalidInputError("bad"), "INVALID_INPUT", 1),
        (CacheFormatError("bad line"), "CACHE_FORMAT", 1),
        (DivisibilityError("remainder"), "DIVISIBILITY", 2),
        (IntegralityError("not an integer"), "INTEGRALITY", 2),
        (NoConvergenceError("too far"), "NO_CONVERGENCE", 2),
        (VerificationError("mismatch"), "VERIFICATION_FAILED", 2),
        (LimitExceededError("too big"), "LIMIT_EXCEEDED", 3),
    ],
)
def test_error_codes(exc, code, exit_code):
    """Test each domain error maps to its code and exit status."""
    assert error_code_for(exc) == code
    assert exit_code_for(exc) == exit_code


def test_unknown_exception():
    """Test an unexpected exception maps to INTERNAL_ERROR."""
    assert error_code_for(RuntimeError("boom")) == "INTERNAL_ERROR"


def test_envelope_carries_details():
    """Test the envelope shape for a domain error."""
    envelope = error_envelope(LimitExceededError("genus = 40 exceeds 8", details=["raise MODULI_MAX_GENUS"]))
    assert envelope == {
        "ok": False,
        "error": {"code": "LIMIT_EXCEEDED", "message": "genus = 40 exceeds 8", "details": ["raise MODULI_MAX_GENUS"]},
    }
    assert ErrorResponse.model_validate(envelope).error.code == "LIMIT_EXCEEDED"


def test_validation_envelope():
    """Test pydantic errors become VALIDATION_ERROR with one detail per field."""
    with pytest.raises(ValidationError) as info:
        PsiRequest(g=-1, d=[-2])
    envelope = error_envelope(info.value)
    assert envelope["error"]["code"] == "VALIDATION_ERROR"
    assert envelope["error"]["message"] == "Request validation failed"
    assert len(envelope["error"]["details"]) == 2
    assert exit_code_for(info.value) == 1


def test_request_validation():
    """Test the request models reject malformed input."""
    with pytest.raises(ValidationError):
        PsiRequest(g=1, d=[])
    with pytest.raises(ValidationError):
        RSpinRequest(r=3, g=1, insertions=[(1, 3)])
    with pytest.raises(ValidationError):
        FaberRankRequest(g=5, k=4)
    with pytest.raises(ValidationError):
        TableRequest(which="faber-rank", g_min=4, g_max=3)
    assert TableRequest(which="rspin3", g_min=1, g_max=1).g_max == 1


def test_schema_examples():
    """Test the request and record models publish their examples in the JSON schema."""
    assert PsiRequest.model_json_schema()["example"] == {"g": 1, "d": [1], "route": "dvv"}
    assert SuiteReport.model_json_schema()["example"]["name"] == "faber-table"
