"""Correlator request models.

Each model validates the shape of a CLI request. Size limits are not
validation errors; the CLI checks them separately and reports them as
LimitExceededError.
"""
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.core.config import GARTHWAITE_K_MAX, SUPPORTED_SPIN


def _non_negative(values: List[int], name: str) -> List[int]:
    bad = [v for v in values if v < 0]
    if bad:
        raise ValueError(f"{name} entries must be >= 0, got {bad}")
    return values


class PsiRequest(BaseModel):
    """Request for a descendent integral <tau_{d_1} ... tau_{d_n}>_g."""
    g: int = Field(..., ge=0, description="Genus", examples=[0, 1, 2])
    d: List[int] = Field(..., min_length=1, description="Psi exponents, one per marked point", examples=[[1], [0, 0, 0]])
    route: Literal["dvv", "effective", "npoint"] = Field(
        "dvv",
        description="dvv: Virasoro recursion; effective: genus-lowering recursion; npoint: coefficient of F_g",
    )
    explain: bool = Field(False, description="Also list the DVV right-hand side terms")

    @field_validator("d")
    @classmethod
    def validate_d(cls, v):
        return _non_negative(v, "d")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "g": 1,
                "d": [1],
                "route": "dvv"
            }
        }
    )


class NpointRequest(BaseModel):
    """Request for an n-point function in n variables."""
    g: int = Field(..., ge=0, description="Genus", examples=[1, 2])
    n: int = Field(..., ge=1, description="Number of variables", examples=[2, 3])
    kind: Literal["F", "G"] = Field("F", description="F: correlator generating polynomial; G: normalized function")
    route: Literal["sum", "recursion", "kernel", "trees"] = Field(
        "sum",
        description="sum and recursion build G_g; kernel runs the K_g recursion; trees sums binary trees (F only)",
    )

    @model_validator(mode="after")
    def check_route(self):
        if self.kind == "G" and self.route in ("kernel", "trees"):
            raise ValueError(f"route {self.route} only produces F")
        return self


class HodgeRequest(BaseModel):
    """Request for a Hodge integral, a closed formula or a Hurwitz number."""
    g: int = Field(..., ge=0, description="Genus", examples=[2])
    psi: List[int] = Field(default_factory=list, description="Psi exponents d_1..d_n")
    kappa: List[int] = Field(default_factory=list, description="Kappa indices as a multiset, e.g. [1, 1] for kappa_1^2")
    lambdas: List[int] = Field(default_factory=list, description="Lambda indices as a multiset, e.g. [1, 1, 1]")
    ch: List[int] = Field(default_factory=list, description="Odd Chern character degrees")
    formula: Optional[Literal["lg", "l2g", "l3g"]] = Field(None, description="Evaluate a closed formula instead")
    hurwitz: List[int] = Field(default_factory=list, description="Ramification profile mu for a Hurwitz number")

    @field_validator("psi", "lambdas")
    @classmethod
    def validate_non_negative(cls, v):
        return _non_negative(v, "index")

    @field_validator("kappa", "ch", "hurwitz")
    @classmethod
    def validate_positive(cls, v):
        if any(x < 1 for x in v):
            raise ValueError(f"entries must be >= 1, got {v}")
        return v

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "g": 2,
                "lambdas": [1, 1, 1]
            }
        }
    )


class VolumeRequest(BaseModel):
    """Request for V_{g,n}(b), or a mixed <tau_d kappa(b)>_g when psi is given."""
    g: int = Field(..., ge=0, description="Genus", examples=[1, 2])
    n: int = Field(0, ge=0, description="Number of tau_0 insertions")
    kappa: List[int] = Field(default_factory=list, description="Kappa indices as a multiset")
    psi: List[int] = Field(default_factory=list, description="Psi exponents for a mixed correlator")
    route: Literal["volume", "mixed", "kappa"] = Field("volume", description="Algorithm for pure volumes")

    @field_validator("kappa")
    @classmethod
    def validate_kappa(cls, v):
        if any(x < 1 for x in v):
            raise ValueError(f"kappa indices must be >= 1, got {v}")
        return v

    @field_validator("psi")
    @classmethod
    def validate_psi(cls, v):
        return _non_negative(v, "psi")

    @model_validator(mode="after")
    def check_points(self):
        if self.psi and self.n:
            raise ValueError("give either n or psi exponents, not both")
        return self


class FaberRankRequest(BaseModel):
    """Request for the ranks of the Faber intersection matrices V_g^k."""
    g: int = Field(..., ge=2, description="Genus", examples=[9, 18])
    k: Optional[int] = Field(None, ge=0, description="Single degree; omit for the whole profile")

    @model_validator(mode="after")
    def check_degree(self):
        if self.k is not None and self.k > self.g - 2:
            raise ValueError(f"k must be <= g - 2 = {self.g - 2}")
        return self


class MockThetaRequest(BaseModel):
    """Request for mock theta coefficients or a Garthwaite evaluation."""
    order: int = Field(..., ge=0, description="Highest power of q", examples=[15, 200])
    series: Literal["omega", "omega-alt", "f"] = Field("omega", description="Which expansion")
    garthwaite: bool = Field(False, description="Evaluate omega(order) by the exact formula instead")
    k_max: int = Field(GARTHWAITE_K_MAX, ge=1, description="Truncation of the exact formula")


class RSpinRequest(BaseModel):
    """Request for an r-spin intersection number."""
    r: int = Field(..., description="Spin parameter", examples=[3, 4])
    g: int = Field(..., ge=0, description="Genus", examples=[1, 2])
    insertions: List[Tuple[int, int]] = Field(..., min_length=1, description="(n, m) pairs for tau_{n,m}")

    @field_validator("r")
    @classmethod
    def validate_r(cls, v):
        if v not in SUPPORTED_SPIN:
            raise ValueError(f"r must be one of {list(SUPPORTED_SPIN)}")
        return v

    @model_validator(mode="after")
    def check_insertions(self):
        for n, m in self.insertions:
            if n < 0 or not 0 <= m <= self.r - 1:
                raise ValueError(f"tau_({n},{m}) needs n >= 0 and 0 <= m <= {self.r - 1}")
        return self

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "r": 3,
                "g": 1,
                "insertions": [[1, 0]]
            }
        }
    )


class TableRequest(BaseModel):
    """Request for one of the reproducible tables over a genus range."""
    which: Literal["faber-rank", "omega", "rspin3", "rspin4"]
    g_min: int = Field(..., ge=0, description="First genus")
    g_max: int = Field(..., ge=0, description="Last genus, inclusive")

    @model_validator(mode="after")
    def check_range(self):
        if self.g_min > self.g_max:
            raise ValueError(f"empty genus range {self.g_min}..{self.g_max}")
        if self.which in ("faber-rank", "omega") and self.g_min < 2:
            raise ValueError(f"{self.which} starts at g = 2")
        return self
