"""Table rows and verification report models."""
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def _check_palindrome(profile: List[int]) -> List[int]:
    if profile != profile[::-1]:
        raise ValueError("profile must be a palindrome (entry k equals entry g - 2 - k)")
    return profile


class SuiteReport(BaseModel):
    """Outcome of one verification suite."""
    name: str = Field(..., description="Suite name", examples=["dvv-vs-npoint", "rspin-tables"])
    ok: bool = Field(..., description="True when every exact comparison held")
    checked: int = Field(..., ge=0, description="Number of comparisons made")
    failures: List[str] = Field(default_factory=list, description="One line per failed comparison")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "name": "faber-table",
                "ok": True,
                "checked": 17,
                "failures": []
            }
        }
    )


class FaberRankRow(BaseModel):
    """Ranks R_g^0..R_g^{g-2} of the Faber intersection matrices for one genus."""
    g: int = Field(..., ge=2, description="Genus", examples=[9, 12])
    profile: List[int] = Field(..., min_length=1, description="R_g^k for k = 0..g-2", examples=[[1, 1, 2, 3, 3, 2, 1, 1]])
    total: int = Field(..., ge=1, description="R_g, the sum of the profile")

    @field_validator("profile")
    @classmethod
    def validate_profile(cls, v):
        return _check_palindrome(v)

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.profile) != self.g - 1:
            raise ValueError(f"profile for g={self.g} needs {self.g - 1} entries, got {len(self.profile)}")
        if sum(self.profile) != self.total:
            raise ValueError("total must equal the sum of the profile")
        return self


class OmegaProfile(BaseModel):
    """omega_g and its split omega_g^k = p_omega(k) - a_omega(3k - g)."""
    g: int = Field(..., ge=2, description="Genus", examples=[18])
    omega_g: int = Field(..., ge=1, description="omega_g = omega(g - 2)", examples=[101])
    profile: List[int] = Field(..., min_length=1, description="omega_g^k for k = 0..g-2")

    @field_validator("profile")
    @classmethod
    def validate_profile(cls, v):
        return _check_palindrome(v)

    @model_validator(mode="after")
    def check_total(self):
        if sum(self.profile) != self.omega_g:
            raise ValueError(f"profile sums to {sum(self.profile)}, expected omega_g = {self.omega_g}")
        return self


class RSpinRecord(BaseModel):
    """One r-spin intersection number as an exact fraction string."""
    r: int = Field(..., ge=2, description="Spin parameter", examples=[3, 4])
    g: int = Field(..., ge=0, description="Genus")
    insertions: List[Tuple[int, int]] = Field(..., min_length=1, description="(n, m) pairs, largest first")
    value: str = Field(..., description="Exact value p/q", examples=["1/12", "17/4320"])
