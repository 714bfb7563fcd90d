"""
calabi/reconstruct/schemas.py

Input data of the flat-parallel reconstruction: a constant cubic form that is
diagonal in a flat orthonormal frame,
    A(e_i, e_i, e_i) = a_i > 0 for i < r, every other component 0,
and the ray direction v with positive entries.
"""

from __future__ import annotations

import math
from typing import Any, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from calabi.consts import MAX_DIMENSION
from calabi.errors import InvalidParametersError


class FlatParallelData(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, le=MAX_DIMENSION)
    diag: Tuple[float, ...] = ()
    v: Tuple[float, ...]

    @model_validator(mode="before")
    @classmethod
    def unit_rays_by_default(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("v") is None and isinstance(data.get("n"), int):
            data = {**data, "v": (1.0,) * data["n"]}
        return data

    @field_validator("diag")
    @classmethod
    def positive_descending(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if not all(math.isfinite(a) and a > 0 for a in value):
            raise ValueError(f"diagonal cubic values must be positive and finite, got {list(value)}")
        if any(a < b for a, b in zip(value, value[1:])):
            raise ValueError(f"diagonal cubic values must be sorted descending, got {list(value)}")
        return value

    @field_validator("v")
    @classmethod
    def positive_rays(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if not all(math.isfinite(x) and x > 0 for x in value):
            raise ValueError(f"ray coordinates must be positive, got {list(value)}")
        return value

    @model_validator(mode="after")
    def lengths_fit(self) -> "FlatParallelData":
        if self.r > self.n:
            raise ValueError(f"{self.r} diagonal values for dimension {self.n}")
        if len(self.v) != self.n:
            raise ValueError(f"ray has {len(self.v)} coordinates, expected {self.n}")
        return self

    @classmethod
    def build(
        cls, n: int, diag: Sequence[float] = (), v: Optional[Sequence[float]] = None
    ) -> "FlatParallelData":
        """Like the constructor, with validation failures as InvalidParametersError."""
        try:
            return cls(n=n, diag=tuple(diag), v=None if v is None else tuple(v))
        except ValidationError as exc:
            raise InvalidParametersError(f"invalid reconstruction data: {exc}") from exc

    @property
    def r(self) -> int:
        return len(self.diag)

    @property
    def cubic_diagonal(self) -> np.ndarray:
        """a_i for every i, zero past r."""
        out = np.zeros(self.n)
        out[: self.r] = self.diag
        return out

    @property
    def rays(self) -> np.ndarray:
        return np.asarray(self.v, dtype=float)

    @property
    def weights(self) -> Tuple[float, ...]:
        """Q weights c_i = 1/a_i^2."""
        return tuple(1.0 / a**2 for a in self.diag)
