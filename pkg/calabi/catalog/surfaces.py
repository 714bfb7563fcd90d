"""
calabi/catalog/surfaces.py

Closed-form classified hypersurfaces and their exact invariants:

    Paraboloid(n):        f = 1/2 sum x_i^2
    Q(c_1..c_r; n):       f = -sum_{i<=r} c_i ln x_i + 1/2 sum_{j>r} x_j^2
    LogCone(c), n = 3:    f = -1/(2c^2) ln(x_1^2 - x_2^2 - x_3^2)
"""

from __future__ import annotations

import math
from typing import Annotated, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from calabi.consts import CASE_PREFIX, MAX_DIMENSION
from calabi.jets.expr import Expr, const, ln, total, var
from calabi.jets.spec import FunctionSpec

# ─────────────────────────────────────────────────────────────────────────────
# 1. SURFACES
# ─────────────────────────────────────────────────────────────────────────────


class Paraboloid(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["paraboloid"] = "paraboloid"
    n: int = Field(ge=1, le=MAX_DIMENSION)

    @property
    def dim(self) -> int:
        return self.n

    def contains(self, x: Sequence[float]) -> bool:
        return len(x) == self.n


class QSurface(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["q"] = "q"
    c: Tuple[float, ...] = Field(min_length=1)
    n: int = Field(ge=1, le=MAX_DIMENSION)

    @field_validator("c")
    @classmethod
    def positive_weights(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        if not all(math.isfinite(ci) and ci > 0 for ci in v):
            raise ValueError(f"Q weights must be positive and finite, got {list(v)}")
        return v

    @model_validator(mode="after")
    def rank_fits_dimension(self) -> "QSurface":
        if self.r > self.n:
            raise ValueError(f"Q needs 1 <= r <= n, got r={self.r}, n={self.n}")
        return self

    @property
    def r(self) -> int:
        return len(self.c)

    @property
    def dim(self) -> int:
        return self.n

    def contains(self, x: Sequence[float]) -> bool:
        return len(x) == self.n and all(xi > 0 for xi in x[: self.r])


class LogCone(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["logcone"] = "logcone"
    c: float = Field(gt=0.0, allow_inf_nan=False)

    @property
    def dim(self) -> int:
        return 3

    def contains(self, x: Sequence[float]) -> bool:
        return len(x) == 3 and x[0] > math.hypot(x[1], x[2])


CatalogSurface = Annotated[Union[Paraboloid, QSurface, LogCone], Field(discriminator="kind")]


def _format_number(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def catalog_id(surface: CatalogSurface) -> str:
    """CLI identifier: paraboloid:n, q:c1,...,cr:n or logcone:c."""
    match surface:
        case Paraboloid(n=n):
            return f"paraboloid:{n}"
        case QSurface(c=c, n=n):
            return f"q:{','.join(_format_number(ci) for ci in c)}:{n}"
        case LogCone(c=c):
            return f"logcone:{_format_number(c)}"
    raise TypeError(f"not a catalog surface: {surface!r}")


def parameters(surface: CatalogSurface) -> Tuple[float, ...]:
    match surface:
        case Paraboloid():
            return ()
        case QSurface(c=c):
            return tuple(c)
        case LogCone(c=c):
            return (c,)
    raise TypeError(f"not a catalog surface: {surface!r}")


def as_function(surface: CatalogSurface) -> FunctionSpec:
    half = const(0.5)
    match surface:
        case Paraboloid(n=n):
            expr: Expr = total([half * var(i) ** 2 for i in range(1, n + 1)])
        case QSurface(c=c, n=n):
            logs = [-(const(ci) * ln(var(i))) for i, ci in enumerate(c, start=1)]
            squares = [half * var(j) ** 2 for j in range(len(c) + 1, n + 1)]
            expr = total(logs + squares)
        case LogCone(c=c):
            cone = var(1) ** 2 - var(2) ** 2 - var(3) ** 2
            expr = -(const(1) / (const(2) * const(c) ** 2)) * ln(cone)
        case _:
            raise TypeError(f"not a catalog surface: {surface!r}")
    return FunctionSpec(
        expr=expr,
        dim=surface.dim,
        catalog_id=catalog_id(surface),
        parameters=parameters(surface),
    )


# ─────────────────────────────────────────────────────────────────────────────
# 2. EXPECTED INVARIANTS
# ─────────────────────────────────────────────────────────────────────────────


class ExpectedInvariants(BaseModel):
    """Closed-form values; J, R and |T|^2 are constant on every catalog surface."""

    model_config = ConfigDict(frozen=True)

    # None when n = 1
    J: Optional[float]
    R: float
    tchebychev_norm_sq: float
    spectrum: List[float]
    case_label: str
    is_flat: bool
    is_parallel: bool = True
    is_extremal: bool = True


def expected_invariants(surface: CatalogSurface) -> ExpectedInvariants:
    match surface:
        case Paraboloid(n=n):
            return ExpectedInvariants(
                J=0.0,
                R=0.0,
                tchebychev_norm_sq=0.0,
                spectrum=[0.0] * n,
                case_label=f"{CASE_PREFIX}0",
                is_flat=True,
            )
        case QSurface(c=c, n=n):
            inv_sum = sum(1.0 / ci for ci in c)
            pick = inv_sum / (n * (n - 1)) if n >= 2 else None
            return ExpectedInvariants(
                J=pick,
                R=0.0,
                tchebychev_norm_sq=inv_sum / n**2,
                spectrum=[max(1.0 / math.sqrt(ci) for ci in c)] + [0.0] * (n - 1),
                case_label=f"{CASE_PREFIX}1",
                is_flat=True,
            )
        case LogCone(c=c):
            return ExpectedInvariants(
                J=7.0 * c**2 / 6.0,
                R=-2.0 * c**2,
                tchebychev_norm_sq=c**2,
                spectrum=[math.sqrt(2.0) * c, c / math.sqrt(2.0), 0.0],
                case_label=f"{CASE_PREFIX}2",
                is_flat=False,
            )
    raise TypeError(f"not a catalog surface: {surface!r}")
