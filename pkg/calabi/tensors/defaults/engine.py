from pydantic import BaseModel, Field

from calabi.config_schemas import ToleranceConfig


class TensorEngineConfig(BaseModel):
    """Configuration for the pointwise tensor engine."""

    tolerance: ToleranceConfig = Field(default_factory=ToleranceConfig)

    # Central-difference step for the holonomy oracle
    holonomy_step: float = Field(default=1e-4, gt=0.0, lt=1.0)
    # Complex-step size for the log-det route to T
    complex_step: float = Field(default=1e-30, gt=0.0)
