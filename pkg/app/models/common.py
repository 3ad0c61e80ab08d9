"""Common request/response models."""
from pydantic import BaseModel, ConfigDict, Field


class ErrorDetail(BaseModel):
    """Error detail model."""
    code: str
    message: str
    details: list = []


class ErrorResponse(BaseModel):
    """Standard error response model."""
    ok: bool = False
    error: ErrorDetail


class ExactValueResponse(BaseModel):
    """A single exact result, serialized as a reduced fraction string."""
    ok: bool = Field(True, description="Indicates if the computation was successful", examples=[True])
    quantity: str = Field(..., description="What was computed", examples=["<tau_1>_1", "V_2,0(kappa_1^3)"])
    value: str = Field(..., description="Reduced fraction p/q, or an integer", examples=["1/24", "1"])

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "ok": True,
                "quantity": "<tau_1>_1",
                "value": "1/24"
            }
        }
    )
