from pydantic import BaseModel, Field

from calabi.consts import DEFAULT_SEED


class CommuteDiagConfig(BaseModel):
    """Configuration for simultaneous diagonalization."""

    # Seed for the random convex-combination weights
    seed: int = DEFAULT_SEED

    # Eigenvalue gaps below gap_factor * spectral radius are treated as degenerate
    gap_factor: float = Field(default=1e-8, gt=0.0, lt=1.0)
    symmetry_tol: float = Field(default=1e-12, gt=0.0)
    commutator_tol: float = Field(default=1e-8, gt=0.0)
    residual_tol: float = Field(default=1e-9, gt=0.0)
