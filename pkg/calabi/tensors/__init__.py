from calabi.tensors.engine import (bundle_at, cubic_at, curvature_at, extremal_residual,
                                   metric_at, parallel_rhs_checks, tchebychev_from_log_det)
from calabi.tensors.holonomy import christoffel_holonomy_riemann
from calabi.tensors.schemas import CubicData, CurvatureData, MetricData, TensorBundle

__all__ = [
    "CubicData",
    "CurvatureData",
    "MetricData",
    "TensorBundle",
    "bundle_at",
    "christoffel_holonomy_riemann",
    "cubic_at",
    "curvature_at",
    "extremal_residual",
    "metric_at",
    "parallel_rhs_checks",
    "tchebychev_from_log_det",
]
