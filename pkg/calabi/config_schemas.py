from pydantic import BaseModel, Field

from calabi.consts import DEFAULT_TOLERANCE, IDENTITY_TOLERANCE, TIE_TOLERANCE


class ToleranceConfig(BaseModel):
    """Standard tolerance policy shared by every check."""

    # absolute tolerance, scaled by (1 + tensor norm) where an identity is asserted
    identity: float = Field(default=IDENTITY_TOLERANCE, gt=0.0)
    verdict: float = Field(default=DEFAULT_TOLERANCE, gt=0.0)
    tie: float = Field(default=TIE_TOLERANCE, gt=0.0)

    def scaled(self, norm: float) -> float:
        return self.identity * (1.0 + abs(norm))
