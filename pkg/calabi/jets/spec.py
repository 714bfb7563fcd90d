"""
calabi/jets/spec.py

FunctionSpec: a strictly convex function given either as an expression tree or
as a catalog surface (which carries its own tree).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from calabi.consts import MAX_DIMENSION
from calabi.errors import DimensionError
from calabi.jets.expr import Expr, max_index, to_text


@dataclass(frozen=True)
class FunctionSpec:
    expr: Expr
    dim: int
    catalog_id: Optional[str] = None
    parameters: Tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DimensionError("function spec has zero dimension")
        if self.dim > MAX_DIMENSION:
            raise DimensionError(f"dimension {self.dim} exceeds the supported maximum {MAX_DIMENSION}")
        needed = max_index(self.expr)
        if needed > self.dim:
            raise DimensionError(f"expression reads x{needed} but dim={self.dim}")

    @property
    def label(self) -> str:
        return self.catalog_id or to_text(self.expr)

    @property
    def text(self) -> str:
        return to_text(self.expr)
