from pydantic import BaseModel, Field


class ReconstructConfig(BaseModel):
    """Step counts and tolerances for the frame integrators."""

    steps: int = Field(default=10_000, gt=0)
    # hyperbolic frames have a non-autonomous right-hand side, so fewer steps by default
    hyperbolic_steps: int = Field(default=2_000, gt=0)

    # Richardson estimate |z_N - z_2N| * 16/15 must stay below this
    error_tol: float = Field(default=1e-6, gt=0.0)
    # integrator versus closed form
    agreement_tol: float = Field(default=1e-9, gt=0.0)
    # diagonal cubic values below this (relative to the largest) count as zero
    zero_tol: float = Field(default=1e-10, gt=0.0)
