"""
calabi/cli/evaluate.py

Per-point work behind `invariants` and `classify`: draw or load points, run the
tensor engine and the normal form, and turn domain failures into rejections.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from calabi.catalog import parse_catalog_id, sample_points
from calabi.catalog.defaults import CatalogConfig
from calabi.cli.reports import ClassifyRecord, PointRecord, Rejection
from calabi.errors import (CalabiError, DimensionError, DomainViolationError, InvalidParametersError,
                           NotPositiveDefiniteError, PatternMismatchError)
from calabi.jets import eval_jet
from calabi.jets.spec import FunctionSpec
from calabi.normal_form import build_basis, classify_case, maximize_cubic
from calabi.normal_form.defaults import NormalFormConfig
from calabi.tensors import TensorBundle, bundle_at, parallel_rhs_checks

logger = logging.getLogger(__name__)

T = TypeVar("T")
Outcome = Union[T, Rejection]

# failures that mean "this point is outside the convexity domain"
POINT_FAILURES = (DomainViolationError, NotPositiveDefiniteError)


def draw_points(
    f: FunctionSpec,
    count: int,
    seed: int,
    box: float,
    catalog: Optional[CatalogConfig] = None,
) -> np.ndarray:
    """Catalog-aware samples for catalog surfaces, a uniform box for DSL functions."""
    generator = np.random.default_rng(seed)
    if f.catalog_id is not None:
        return sample_points(parse_catalog_id(f.catalog_id), count, generator, catalog)
    return generator.uniform(-box, box, (count, f.dim))


def load_points(path: Union[str, Path], dim: int) -> np.ndarray:
    """A JSON list of points (or {"points": [...]})."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("points", [])
    try:
        points = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidParametersError(f"{path}: points must be a list of number lists") from exc
    if points.ndim != 2 or points.shape[1] != dim:
        raise DimensionError(f"{path}: expected points of dimension {dim}, got shape {points.shape}")
    return points


def run_points(work: Callable[[np.ndarray], T], points: Sequence, workers: int) -> List[T]:
    """Ordered map over points; results come back in point order whatever the worker count."""
    if workers <= 1:
        return [work(np.asarray(x)) for x in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(work, [np.asarray(x) for x in points]))


def spectrum_and_label(
    bundle: TensorBundle, config: NormalFormConfig
) -> Tuple[List[float], Optional[str]]:
    if bundle.dim < 2:
        return [], None
    normal_form = build_basis(bundle, maximize_cubic(bundle, config), config)
    try:
        label = classify_case(normal_form.spectrum, config.classify_tol)
    except PatternMismatchError as exc:
        logger.debug(f"no case fits at {bundle.point}: {exc}")
        label = None
    return normal_form.spectrum.tolist(), label


def _reject(x: np.ndarray, exc: CalabiError) -> Rejection:
    logger.debug(f"rejected {x.tolist()}: {exc}")
    return Rejection(point=x.tolist(), reason=str(exc))


def invariants_at(
    f: FunctionSpec, x: np.ndarray, config: NormalFormConfig
) -> Tuple[Outcome[PointRecord], float]:
    """The record for one point and its scalar-curvature route discrepancy."""
    try:
        bundle = bundle_at(eval_jet(f, x))
    except POINT_FAILURES as exc:
        return _reject(x, exc), 0.0
    curvature = bundle.curvature
    spectrum, label = spectrum_and_label(bundle, config)
    record = PointRecord(
        point=x.tolist(),
        J=curvature.J if bundle.dim >= 2 else None,
        R=curvature.R,
        tchebychev_norm_sq=curvature.tchebychev_norm_sq,
        cov_a_norm=curvature.cov_a_norm,
        riem_norm=curvature.riem_norm,
        extremal=bundle.extremal,
        parallel_rhs=list(parallel_rhs_checks(bundle)),
        case_label=label,
        spectrum=spectrum,
    )
    return record, curvature.scalar_discrepancy


def classify_at(f: FunctionSpec, x: np.ndarray, config: NormalFormConfig) -> Outcome[ClassifyRecord]:
    try:
        bundle = bundle_at(eval_jet(f, x))
    except POINT_FAILURES as exc:
        return _reject(x, exc)
    spectrum, label = spectrum_and_label(bundle, config)
    return ClassifyRecord(point=x.tolist(), case_label=label, spectrum=spectrum)
