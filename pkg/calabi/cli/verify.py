"""
calabi/cli/verify.py

Property suite behind `verify-catalog`: every closed-form claim about a catalog
surface checked on seeded samples. Residual limits follow the tolerance policy
(absolute tolerance scaled by 1 + |A| where tensors are compared).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from calabi.affine import AffineMap, check_equivalence_invariants
from calabi.catalog import (CatalogSurface, LogCone, Paraboloid, QSurface, as_function, catalog_id,
                            expected_invariants, expected_pullback, graph_residual,
                            pullback_metric, sample_points)
from calabi.catalog.defaults import CatalogConfig
from calabi.cli.defaults import VerifierConfig
from calabi.cli.evaluate import run_points, spectrum_and_label
from calabi.cli.reports import CheckResult, VerificationReport
from calabi.consts import CASE_PREFIX
from calabi.jets import eval_jet
from calabi.normal_form.defaults import NormalFormConfig
from calabi.reconstruct import (FlatParallelData, closed_form, integrate_frames,
                                integrate_hyperbolic, recovered_surface)
from calabi.tensors import bundle_at, parallel_rhs_checks

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointStats:
    J: Optional[float]
    R: float
    tchebychev_norm_sq: float
    cubic_norm_sq: float
    cov_a_norm: float
    riem_norm: float
    extremal: float
    parallel_rhs: float
    codazzi: float
    scalar_discrepancy: float
    spectrum: List[float]
    case_label: Optional[str]


def point_stats(surface: CatalogSurface, x: np.ndarray, config: NormalFormConfig) -> PointStats:
    bundle = bundle_at(eval_jet(as_function(surface), x))
    curvature = bundle.curvature
    spectrum, label = spectrum_and_label(bundle, config)
    return PointStats(
        J=curvature.pick,
        R=curvature.R,
        tchebychev_norm_sq=curvature.tchebychev_norm_sq,
        cubic_norm_sq=curvature.cubic_norm_sq,
        cov_a_norm=curvature.cov_a_norm,
        riem_norm=curvature.riem_norm,
        extremal=abs(bundle.extremal),
        parallel_rhs=max(parallel_rhs_checks(bundle)),
        codazzi=bundle.cubic.codazzi_defect / (1.0 + curvature.cov_a_norm),
        scalar_discrepancy=curvature.scalar_discrepancy / (1.0 + abs(curvature.R)),
        spectrum=spectrum,
        case_label=label,
    )


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / (1.0 + abs(reference))


def _sorted_spectrum(spectrum: List[float]) -> np.ndarray:
    return np.concatenate([spectrum[:1], np.sort(spectrum[1:])[::-1]])


def _excluded_labels(surface: CatalogSurface) -> set[str]:
    """C0 only on the paraboloid; C3 never in dimension three."""
    excluded = set()
    if not isinstance(surface, Paraboloid):
        excluded.add(f"{CASE_PREFIX}0")
    if surface.dim == 3:
        excluded.add(f"{CASE_PREFIX}3")
    return excluded


# ─────────────────────────────────────────────────────────────────────────────
# Checks
# ─────────────────────────────────────────────────────────────────────────────


def pointwise_checks(
    surface: CatalogSurface, stats: List[PointStats], tol: float, config: VerifierConfig
) -> List[CheckResult]:
    name = catalog_id(surface)
    expected = expected_invariants(surface)
    scale = 1.0 + math.sqrt(max(s.cubic_norm_sq for s in stats))
    expected_spectrum = _sorted_spectrum(expected.spectrum)

    def check(label: str, value: float, limit: float) -> CheckResult:
        return CheckResult(surface=name, name=label, value=float(value), limit=limit)

    checks = []
    if expected.J is not None:
        checks.append(check("pick", max(_relative(s.J, expected.J) for s in stats), tol))
    checks += [
        check("scalar_curvature", max(_relative(s.R, expected.R) for s in stats), tol),
        check(
            "tchebychev",
            max(_relative(s.tchebychev_norm_sq, expected.tchebychev_norm_sq) for s in stats),
            tol,
        ),
        check("parallel", max(s.cov_a_norm for s in stats) / scale, tol),
        check("extremal", max(s.extremal for s in stats) / scale, tol),
        check("parallel_rhs", max(s.parallel_rhs for s in stats) / scale, tol),
        check("codazzi", max(s.codazzi for s in stats), tol),
        check("scalar_routes", max(s.scalar_discrepancy for s in stats), tol),
    ]
    if expected.is_flat:
        checks.append(check("flat", max(s.riem_norm for s in stats) / scale, tol))
    if surface.dim >= 2:
        deviation = max(
            float(np.abs(_sorted_spectrum(s.spectrum) - expected_spectrum).max()) for s in stats
        )
        excluded = _excluded_labels(surface)
        checks += [
            check("spectrum", deviation, config.spectrum_tol),
            check("case_label", sum(s.case_label != expected.case_label for s in stats), 0.0),
            check("excluded_cases", sum(s.case_label in excluded for s in stats), 0.0),
        ]
    return checks


def parametrization_checks(surface: LogCone, seed: int, tol: float, config: VerifierConfig) -> List[CheckResult]:
    name = catalog_id(surface)
    c = surface.c
    generator = np.random.default_rng(seed)
    count = config.parametrization_samples
    ys = np.column_stack(
        [
            generator.uniform(-1.0, 1.0, count),
            generator.uniform(0.1, 3.0, count),
            generator.uniform(-math.pi, math.pi, count),
        ]
    )
    residual = max(graph_residual(c, y) for y in ys)
    pullback = max(
        float(np.abs(pullback_metric(c, y) - expected_pullback(c, y)).max())
        / (1.0 + float(np.abs(expected_pullback(c, y)).max()))
        for y in ys[: config.pullback_samples]
    )
    hyperbolic = integrate_hyperbolic(c, [0.0, 1.0, 0.0], [0.5, 1.5, 1.0]).deviation
    return [
        CheckResult(surface=name, name="parametrization", value=residual, limit=config.parametrization_tol),
        CheckResult(surface=name, name="pullback_metric", value=pullback, limit=tol),
        CheckResult(surface=name, name="hyperbolic_frames", value=hyperbolic, limit=config.hyperbolic_tol),
    ]


def reconstruction_checks(surface: Paraboloid | QSurface, tol: float, config: VerifierConfig) -> List[CheckResult]:
    name = catalog_id(surface)
    weights = surface.c if isinstance(surface, QSurface) else ()
    diag = sorted((1.0 / math.sqrt(ci) for ci in weights), reverse=True)
    data = FlatParallelData.build(n=surface.dim, diag=diag)
    path = integrate_frames(data)
    recovered = recovered_surface(data)
    recovered_weights = recovered.c if isinstance(recovered, QSurface) else ()
    weight_gap = max(
        (abs(a - b) / b for a, b in zip(sorted(recovered_weights), sorted(weights))), default=0.0
    )
    return [
        CheckResult(
            surface=name,
            name="reconstruction",
            value=float(np.abs(path.x - closed_form(data)).max()),
            limit=config.reconstruction_tol,
        ),
        CheckResult(
            surface=name,
            name="recovered_weights",
            value=weight_gap + float(len(recovered_weights) != len(weights)),
            limit=tol,
        ),
    ]


def invariance_check(
    surface: CatalogSurface, points: np.ndarray, seed: int, config: VerifierConfig, nf_config: NormalFormConfig
) -> CheckResult:
    phi = AffineMap.random(surface.dim, np.random.default_rng(seed))
    report = check_equivalence_invariants(
        phi, as_function(surface), points[: config.invariance_samples], nf_config
    )
    return CheckResult(
        surface=catalog_id(surface),
        name="affine_invariance",
        value=report.worst() + report.label_mismatches,
        limit=config.invariance_tol,
    )


# ─────────────────────────────────────────────────────────────────────────────
# Suite
# ─────────────────────────────────────────────────────────────────────────────


def verify_surface(
    surface: CatalogSurface,
    tol: float,
    seed: int,
    config: Optional[VerifierConfig] = None,
    nf_config: Optional[NormalFormConfig] = None,
    catalog_config: Optional[CatalogConfig] = None,
) -> List[CheckResult]:
    config = config or VerifierConfig()
    nf_config = nf_config or NormalFormConfig()
    points = sample_points(surface, config.sample_count, np.random.default_rng(seed), catalog_config)
    stats = run_points(lambda x: point_stats(surface, x, nf_config), points, config.workers)

    checks = pointwise_checks(surface, stats, tol, config)
    if isinstance(surface, LogCone):
        checks += parametrization_checks(surface, seed, tol, config)
    else:
        checks += reconstruction_checks(surface, tol, config)
    checks.append(invariance_check(surface, points, seed, config, nf_config))

    failed = [c.name for c in checks if not c.passed]
    logger.info(f"{catalog_id(surface)}: {len(checks) - len(failed)}/{len(checks)} checks passed")
    if failed:
        logger.warning(f"{catalog_id(surface)} failed: {', '.join(failed)}")
    return checks


def verify_catalog(
    surfaces: List[CatalogSurface],
    tol: float,
    seed: int,
    config: Optional[VerifierConfig] = None,
    nf_config: Optional[NormalFormConfig] = None,
    catalog_config: Optional[CatalogConfig] = None,
) -> VerificationReport:
    checks: List[CheckResult] = []
    for surface in surfaces:
        checks += verify_surface(surface, tol, seed, config, nf_config, catalog_config)
    return VerificationReport(seed=seed, tolerance=tol, checks=checks)
