from pydantic import BaseModel, Field

from calabi.consts import DEFAULT_SEED, TIE_TOLERANCE


class NormalFormConfig(BaseModel):
    """Configuration for the sphere maximization, the Ejiri basis and case labels."""

    seed: int = DEFAULT_SEED
    starts: int = Field(default=32, ge=32)

    # Shifted power iterations, then Newton polish of the best candidates
    power_iterations: int = Field(default=400, gt=0)
    power_tol: float = Field(default=1e-10, gt=0.0)
    polish_candidates: int = Field(default=4, gt=0)
    newton_steps: int = Field(default=30, gt=0)

    # |A(e1,e1,.) - mu1 e1| must end below this
    lagrange_tol: float = Field(default=1e-8, gt=0.0)
    # relative gap under which two spectrum values count as equal
    tie_tol: float = Field(default=TIE_TOLERANCE, gt=0.0)
    classify_tol: float = Field(default=TIE_TOLERANCE, gt=0.0)
    # frame cubic below this max-abs value is treated as zero
    zero_tol: float = Field(default=1e-13, gt=0.0)
