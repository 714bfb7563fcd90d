from pydantic import BaseModel, Field

from calabi.consts import DEFAULT_SAMPLE_COUNT, DEFAULT_SEED, DEFAULT_TOLERANCE


class VerifierConfig(BaseModel):
    """Command-line defaults and the thresholds of the catalog property suite."""

    tolerance: float = Field(default=DEFAULT_TOLERANCE, gt=0.0)
    seed: int = DEFAULT_SEED
    sample_count: int = Field(default=DEFAULT_SAMPLE_COUNT, gt=0)
    workers: int = Field(default=1, ge=1)

    # random points for DSL functions are drawn from [-box, box]^n
    box: float = Field(default=2.0, gt=0.0)

    # Suite thresholds that do not follow the main tolerance
    spectrum_tol: float = Field(default=1e-6, gt=0.0)
    parametrization_tol: float = Field(default=1e-10, gt=0.0)
    parametrization_samples: int = Field(default=1000, gt=0)
    pullback_samples: int = Field(default=100, gt=0)
    hyperbolic_tol: float = Field(default=1e-8, gt=0.0)
    reconstruction_tol: float = Field(default=1e-9, gt=0.0)
    invariance_tol: float = Field(default=1e-7, gt=0.0)
    invariance_samples: int = Field(default=10, gt=0)
