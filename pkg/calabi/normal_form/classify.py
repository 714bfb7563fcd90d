"""
calabi/normal_form/classify.py

Case labels C0..Cn from the Ejiri spectrum, and frame-level checks of the
case-C2 structure.
"""

from __future__ import annotations

import logging
from dataclasses import replace
from typing import Optional, Sequence

import numpy as np

from calabi.consts import CASE_PREFIX
from calabi.errors import DimensionError, PatternMismatchError
from calabi.normal_form.basis import NormalForm, build_basis
from calabi.normal_form.defaults import NormalFormConfig
from calabi.normal_form.maximize import maximize_cubic
from calabi.tensors.schemas import CurvatureData, TensorBundle

logger = logging.getLogger(__name__)


def classify_case(spectrum: Sequence[float], tol: float) -> str:
    """
    C0 when mu1 < tol. Otherwise k values among mu2..mun must equal mu1/2 and the
    rest vanish (both relative to mu1); the label is C_{k+1}, so C1 means
    mu2 = ... = mun = 0.

    Raises:
        PatternMismatchError: some mu_j is neither mu1/2 nor 0.
    """
    mu = np.asarray(spectrum, dtype=float)
    mu1 = float(mu[0])
    if mu1 < tol:
        return f"{CASE_PREFIX}0"

    halves = 0
    for value in mu[1:]:
        if abs(value - mu1 / 2) < tol * mu1:
            halves += 1
        elif abs(value) >= tol * mu1:
            raise PatternMismatchError(mu.tolist(), tol)
    return f"{CASE_PREFIX}{halves + 1}"


def normal_form_at(bundle: TensorBundle, config: Optional[NormalFormConfig] = None) -> NormalForm:
    config = config or NormalFormConfig()
    maximum = maximize_cubic(bundle, config)
    normal_form = build_basis(bundle, maximum, config)
    label = classify_case(normal_form.spectrum, config.classify_tol)
    logger.debug(f"point {bundle.point}: spectrum {normal_form.spectrum}, case {label}")
    return replace(normal_form, case_label=label)


def rotate_c2_frame(normal_form: NormalForm) -> np.ndarray:
    """
    Basis (e1+e3)/sqrt2, e2, (e3-e1)/sqrt2 of a three-dimensional case-C2 frame.
    In it A(e~1, v, .) = sqrt2 * mu2 * v for every v.
    """
    if normal_form.dim != 3:
        raise DimensionError("the case-C2 rotation is defined for n = 3")
    e1, e2, e3 = normal_form.basis.T
    root = np.sqrt(2.0)
    return np.column_stack([(e1 + e3) / root, e2, (e3 - e1) / root])


def frame_ricci(normal_form: NormalForm, curvature: CurvatureData) -> np.ndarray:
    """Ricci tensor in the Ejiri frame: R(e_i, e_j)."""
    basis = normal_form.basis
    return basis.T @ curvature.Ric @ basis
