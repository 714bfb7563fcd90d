"""
calabi/affine/action.py

SA(n+1) acting on convex functions, and the invariance check: metric and cubic
form pulled back through the base map, scalar invariants, Ejiri spectrum and
case label compared at corresponding points.
"""

from __future__ import annotations

import logging
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from calabi.affine.group import AffineMap
from calabi.errors import DimensionError, PatternMismatchError
from calabi.jets.expr import Compose, const, total, var
from calabi.jets.jet import eval_jet
from calabi.jets.spec import FunctionSpec
from calabi.normal_form import build_basis, classify_case, maximize_cubic
from calabi.normal_form.defaults import NormalFormConfig
from calabi.tensors import TensorBundle, bundle_at

logger = logging.getLogger(__name__)

PointMap = Callable[[Sequence[float]], np.ndarray]


def act_on_function(phi: AffineMap, f: FunctionSpec) -> Tuple[FunctionSpec, PointMap]:
    """
    The transformed function f~ with f~(phi_base(x)) = f(x) + shear . x + b_last,
    together with the base-point map x -> phi_base(x).

    Raises:
        DimensionError: phi and f live in different dimensions.
        SingularMapError: the linear block is not invertible.
    """
    if phi.n != f.dim:
        raise DimensionError(f"map acts on R^{phi.n + 1}, function has dim={f.dim}")
    phi.check_invertible()
    if phi.is_identity():
        return f, phi.base_map

    terms = [f.expr]
    terms += [var(j + 1) * const(s) for j, s in enumerate(phi.shear) if s != 0.0]
    if phi.translate[-1] != 0.0:
        terms.append(const(phi.translate[-1]))

    a_inv = np.linalg.inv(phi.a)
    offset = -a_inv @ phi.b[: phi.n]
    expr = Compose(
        inner=total(terms),
        linear=tuple(tuple(float(v) for v in row) for row in a_inv),
        offset=tuple(float(v) for v in offset),
    )
    return FunctionSpec(expr=expr, dim=f.dim), phi.base_map


class EquivalenceReport(BaseModel):
    """Largest deviations over the sampled points, each relative to 1 + |reference|."""

    points: int = 0
    metric_deviation: float = 0.0
    cubic_deviation: float = 0.0
    pick_deviation: float = 0.0
    scalar_deviation: float = 0.0
    tchebychev_deviation: float = 0.0
    spectrum_deviation: float = 0.0
    label_mismatches: int = 0

    def worst(self) -> float:
        return max(
            self.metric_deviation,
            self.cubic_deviation,
            self.pick_deviation,
            self.scalar_deviation,
            self.tchebychev_deviation,
            self.spectrum_deviation,
        )

    def passed(self, tol: float) -> bool:
        return self.worst() < tol and self.label_mismatches == 0


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / (1.0 + abs(reference))


def _pick(bundle: TensorBundle) -> Optional[float]:
    try:
        return bundle.curvature.J
    except DimensionError:
        return None


def _spectrum_and_label(
    bundle: TensorBundle, config: NormalFormConfig
) -> Tuple[Optional[np.ndarray], Optional[str]]:
    if bundle.dim < 2:
        return None, None
    normal_form = build_basis(bundle, maximize_cubic(bundle, config), config)
    spectrum = np.concatenate([normal_form.spectrum[:1], np.sort(normal_form.spectrum[1:])[::-1]])
    try:
        label = classify_case(spectrum, config.classify_tol)
    except PatternMismatchError:
        label = None
    return spectrum, label


def check_equivalence_invariants(
    phi: AffineMap,
    f: FunctionSpec,
    points: Sequence[Sequence[float]],
    config: Optional[NormalFormConfig] = None,
) -> EquivalenceReport:
    """
    Compare f at x with phi(f) at phi_base(x) for every sample point x.
    G and A are pulled back with the linear block: G(x) = a^T G~(y) a.
    """
    config = config or NormalFormConfig()
    transformed, point_map = act_on_function(phi, f)
    a = phi.a
    report = {key: 0.0 for key in EquivalenceReport.model_fields if key not in ("points", "label_mismatches")}
    mismatches = 0
    count = 0

    for x in points:
        x = np.asarray(x, dtype=float)
        left = bundle_at(eval_jet(f, x))
        right = bundle_at(eval_jet(transformed, point_map(x)))
        count += 1

        G = left.metric.G
        pulled_G = a.T @ right.metric.G @ a
        report["metric_deviation"] = max(
            report["metric_deviation"], float(np.abs(pulled_G - G).max() / (1.0 + np.abs(G).max()))
        )
        A = left.cubic.A
        pulled_A = np.einsum("abc,ai,bj,ck->ijk", right.cubic.A, a, a, a)
        report["cubic_deviation"] = max(
            report["cubic_deviation"], float(np.abs(pulled_A - A).max() / (1.0 + np.abs(A).max()))
        )

        J_left, J_right = _pick(left), _pick(right)
        if J_left is not None and J_right is not None:
            report["pick_deviation"] = max(report["pick_deviation"], _relative(J_right, J_left))
        report["scalar_deviation"] = max(
            report["scalar_deviation"], _relative(right.curvature.R, left.curvature.R)
        )
        report["tchebychev_deviation"] = max(
            report["tchebychev_deviation"],
            _relative(right.curvature.tchebychev_norm_sq, left.curvature.tchebychev_norm_sq),
        )

        spectrum_left, label_left = _spectrum_and_label(left, config)
        spectrum_right, label_right = _spectrum_and_label(right, config)
        if spectrum_left is not None:
            deviation = float(np.abs(spectrum_right - spectrum_left).max() / (1.0 + np.abs(spectrum_left).max()))
            report["spectrum_deviation"] = max(report["spectrum_deviation"], deviation)
        if label_left != label_right:
            mismatches += 1
            logger.debug(f"case label changed at {x.tolist()}: {label_left} -> {label_right}")

    return EquivalenceReport(points=count, label_mismatches=mismatches, **report)
