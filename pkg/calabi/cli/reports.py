# calabi/cli/reports.py
"""
REPORT SCHEMAS
==============

Machine-readable output of every subcommand. These schemas guarantee that:
- every number written to stdout is finite,
- verdict flags are derived from residuals and the tolerance, never set by hand,
- the JSON text is byte-stable (sorted keys, fixed indentation, no timestamps).
"""

from __future__ import annotations

import json
import math
from typing import Any, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from calabi.consts import TOOL_VERSION


def _non_finite(value: Any, path: str = "") -> Optional[str]:
    if isinstance(value, float) and not math.isfinite(value):
        return path or "<root>"
    if isinstance(value, dict):
        for key, item in value.items():
            found = _non_finite(item, f"{path}.{key}" if path else str(key))
            if found:
                return found
    if isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            found = _non_finite(item, f"{path}[{i}]")
            if found:
                return found
    return None


class FiniteModel(BaseModel):
    """Rejects NaN / Inf anywhere in the model before it can be serialized."""

    @model_validator(mode="after")
    def all_finite(self) -> "FiniteModel":
        found = _non_finite(self.model_dump())
        if found:
            raise ValueError(f"non-finite number at {found}")
        return self

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2)


# ─────────────────────────────────────────────────────────────────────────────
# invariants / classify
# ─────────────────────────────────────────────────────────────────────────────


class PointRecord(FiniteModel):
    point: List[float]
    J: Optional[float] = Field(default=None, description="Pick invariant; absent for n = 1.")
    R: float
    tchebychev_norm_sq: float
    cov_a_norm: float = Field(description="G-norm of the covariant derivative of A.")
    riem_norm: float
    extremal: float = Field(description="Calabi Laplacian of ln det Hess f.")
    parallel_rhs: List[float] = Field(default_factory=list)
    case_label: Optional[str] = None
    spectrum: List[float] = Field(default_factory=list)


class Rejection(BaseModel):
    point: List[float]
    reason: str


class Summary(FiniteModel):
    max_cov_a_norm: float = 0.0
    max_riem_norm: float = 0.0
    max_extremal: float = 0.0
    max_scalar_discrepancy: float = 0.0
    flat: bool = False
    parallel: bool = False
    extremal: bool = False

    @classmethod
    def from_records(
        cls, records: List[PointRecord], discrepancies: List[float], tol: float
    ) -> "Summary":
        if not records:
            return cls()
        worst_cov = max(r.cov_a_norm for r in records)
        worst_riem = max(r.riem_norm for r in records)
        worst_extremal = max(abs(r.extremal) for r in records)
        return cls(
            max_cov_a_norm=worst_cov,
            max_riem_norm=worst_riem,
            max_extremal=worst_extremal,
            max_scalar_discrepancy=max(discrepancies, default=0.0),
            flat=worst_riem < tol,
            parallel=worst_cov < tol,
            extremal=worst_extremal < tol,
        )


class Report(FiniteModel):
    surface: str
    dim: int
    seed: Optional[int] = None
    tolerance: float
    tool_version: str = TOOL_VERSION
    records: List[PointRecord] = Field(default_factory=list)
    rejected: List[Rejection] = Field(default_factory=list)
    summary: Summary = Field(default_factory=Summary)


class ClassifyRecord(FiniteModel):
    point: List[float]
    case_label: Optional[str]
    spectrum: List[float]


class ClassifyReport(FiniteModel):
    surface: str
    dim: int
    seed: Optional[int] = None
    tolerance: float
    tool_version: str = TOOL_VERSION
    records: List[ClassifyRecord] = Field(default_factory=list)
    rejected: List[Rejection] = Field(default_factory=list)


# ─────────────────────────────────────────────────────────────────────────────
# verify-catalog
# ─────────────────────────────────────────────────────────────────────────────


class CheckResult(FiniteModel):
    surface: str
    name: str
    value: float
    limit: float
    passed: bool = False

    @model_validator(mode="after")
    def verdict(self) -> "CheckResult":
        self.passed = self.value <= self.limit
        return self


class VerificationReport(FiniteModel):
    seed: int
    tolerance: float
    tool_version: str = TOOL_VERSION
    checks: List[CheckResult] = Field(default_factory=list)
    passed: bool = False

    @model_validator(mode="after")
    def verdict(self) -> "VerificationReport":
        self.passed = all(check.passed for check in self.checks)
        return self

    def worst(self) -> Optional[CheckResult]:
        failed = [check for check in self.checks if not check.passed]
        if not failed:
            return None
        return max(failed, key=lambda check: check.value / check.limit if check.limit else math.inf)


# ─────────────────────────────────────────────────────────────────────────────
# reconstruct / diag
# ─────────────────────────────────────────────────────────────────────────────


class ReconstructReport(FiniteModel):
    n: int
    a: List[float]
    c: List[float]
    surface: str
    rays: List[float]
    steps: int
    x_integrated: List[float]
    x_closed: List[float]
    integration_residual: float
    error_estimate: float
    graph_residual: float
    round_trip_residual: float
    tolerance: float
    passed: bool = False
    tool_version: str = TOOL_VERSION

    @model_validator(mode="after")
    def verdict(self) -> "ReconstructReport":
        worst = max(self.integration_residual, self.graph_residual, self.round_trip_residual)
        self.passed = worst < self.tolerance
        return self


class DiagReport(FiniteModel):
    P: List[List[float]]
    eigenvalues: List[List[float]]
    residuals: List[float]
    max_off_diagonal: float
    orthogonality_defect: float
    recursion_depth: int
    status: Literal["ok"] = "ok"
    tool_version: str = TOOL_VERSION
