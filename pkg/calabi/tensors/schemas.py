"""
calabi/tensors/schemas.py

Pointwise geometric data of a Calabi hypersurface x_{n+1} = f(x).
All tensors are in coordinate indices (0-based); indices are raised and lowered
only through G and Ginv.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from calabi.errors import DimensionError
from calabi.jets.jet import Jet4


@dataclass(frozen=True)
class MetricData:
    G: np.ndarray
    Ginv: np.ndarray
    detG: float
    # lower Cholesky factor, G = L L^T
    cholesky: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.G.shape[0]

    @property
    def weingarten(self) -> np.ndarray:
        """Relative affine shape operator; identically zero for graphs with normal Y."""
        return np.zeros_like(self.G)

    @property
    def inverse_defect(self) -> float:
        return float(np.abs(self.G @ self.Ginv - np.eye(self.dim)).max())


@dataclass(frozen=True)
class CubicData:
    A: np.ndarray
    # Gamma[k, i, j] = Gamma^k_ij
    Gamma: np.ndarray
    # CovA[i, j, k, l] = A_{ijk,l}; None for an order-3 jet
    CovA: Optional[np.ndarray] = None

    @property
    def codazzi_defect(self) -> float:
        if self.CovA is None:
            return 0.0
        return float(np.abs(self.CovA - self.CovA.transpose(0, 1, 3, 2)).max())


@dataclass(frozen=True)
class CurvatureData:
    Riem: np.ndarray
    Ric: np.ndarray
    scalar_trace: float
    scalar_formula: float
    T_upper: np.ndarray
    T_lower: np.ndarray
    pick: Optional[float]
    cubic_norm_sq: float
    riem_norm_sq: float
    cov_a_norm_sq: Optional[float]
    symmetry_defect: float
    bianchi_defect: float

    @property
    def R(self) -> float:
        return self.scalar_trace

    @property
    def J(self) -> float:
        if self.pick is None:
            raise DimensionError("Pick invariant needs n >= 2 (it divides by n(n-1))")
        return self.pick

    @property
    def scalar_discrepancy(self) -> float:
        return abs(self.scalar_trace - self.scalar_formula)

    @property
    def tchebychev_norm_sq(self) -> float:
        return float(self.T_lower @ self.T_upper)

    @property
    def riem_norm(self) -> float:
        return float(np.sqrt(max(self.riem_norm_sq, 0.0)))

    @property
    def cov_a_norm(self) -> float:
        if self.cov_a_norm_sq is None:
            raise ValueError("covariant derivative of A needs an order-4 jet")
        return float(np.sqrt(max(self.cov_a_norm_sq, 0.0)))


@dataclass(frozen=True)
class TensorBundle:
    jet: Jet4 = field(repr=False)
    metric: MetricData
    cubic: CubicData
    curvature: CurvatureData
    # Calabi Laplacian of ln det Hess f; None for jets below order 4
    extremal: Optional[float] = None

    @property
    def dim(self) -> int:
        return self.jet.dim

    @property
    def point(self) -> tuple[float, ...]:
        return self.jet.point
