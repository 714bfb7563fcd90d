from typing import List

from pydantic import BaseModel, Field, model_validator

from calabi.consts import DEFAULT_SAMPLE_COUNT

DEFAULT_SURFACES = [
    "paraboloid:2",
    "paraboloid:3",
    "q:1:2",
    "q:1,1:2",
    "q:2,3:3",
    "q:1:3",
    "q:0.5,2,3:3",
    "logcone:0.5",
    "logcone:1",
    "logcone:2",
]


class CatalogConfig(BaseModel):
    """Sampling boxes and the default surface list for catalog verification."""

    surfaces: List[str] = Field(default_factory=lambda: list(DEFAULT_SURFACES))
    sample_count: int = Field(default=DEFAULT_SAMPLE_COUNT, gt=0)

    # x_i for the log coordinates of Q
    log_low: float = Field(default=0.2, gt=0.0)
    log_high: float = Field(default=3.0, gt=0.0)
    # half-width of the box for free coordinates
    box: float = Field(default=2.0, gt=0.0)
    # LogCone: x1 in [cone_low, cone_high], |(x2, x3)| <= cone_ratio * x1
    cone_low: float = Field(default=0.1, gt=0.0)
    cone_high: float = Field(default=4.0, gt=0.0)
    cone_ratio: float = Field(default=0.75, gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def ordered_ranges(self) -> "CatalogConfig":
        if self.log_low >= self.log_high or self.cone_low >= self.cone_high:
            raise ValueError("sampling ranges must satisfy low < high")
        return self
