"""
calabi/normal_form/basis.py

Ejiri basis at a point: e1 maximizes F on the unit sphere, e2..en diagonalize
v -> A(e1, v, .) on the orthogonal complement. Inside an eigenspace of repeated
mu the basis is fixed by maximizing F again on that eigenspace, recursively.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np
from scipy import linalg

from calabi.normal_form.defaults import NormalFormConfig
from calabi.normal_form.maximize import (CubicMaximum, frame_cubic, maximize_form,
                                         orthonormal_frame)
from calabi.tensors.schemas import TensorBundle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalForm:
    # columns e1..en in coordinates, G-orthonormal
    basis: np.ndarray
    spectrum: np.ndarray
    # frame_cubic[i, j, k] = A(e_i, e_j, e_k)
    frame_cubic: np.ndarray
    off_diagonal: float
    orthonormality_defect: float
    lagrange_residual: float
    case_label: Optional[str] = None

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def mu1(self) -> float:
        return float(self.spectrum[0])


def _fix_sign(T: np.ndarray, u: np.ndarray, zero_tol: float) -> np.ndarray:
    """A(u,u,u) >= 0; if that vanishes, the largest-magnitude component is positive."""
    value = float(np.einsum("abc,a,b,c->", T, u, u, u))
    if abs(value) > zero_tol:
        return u if value > 0 else -u
    pivot = int(np.argmax(np.abs(u)))
    return u if u[pivot] >= 0 else -u


def _tie_groups(values: np.ndarray, scale: float, tie_tol: float) -> List[np.ndarray]:
    """Consecutive runs of (descending) values closer than tie_tol * scale."""
    threshold = tie_tol * max(scale, 1e-300)
    breaks = np.flatnonzero(np.abs(np.diff(values)) > threshold) + 1
    return np.split(np.arange(values.size), breaks)


def _complete_frame(
    T: np.ndarray,
    leader: np.ndarray,
    subspace: np.ndarray,
    scale: float,
    config: NormalFormConfig,
    generator: np.random.Generator,
) -> np.ndarray:
    """
    Orthonormal columns spanning `subspace` minus `leader`, diagonalizing
    T(leader, ., .) there, with every repeated-eigenvalue block refined.
    """
    complement = subspace @ linalg.null_space((subspace.T @ leader)[None, :])
    if complement.shape[1] == 0:
        return complement
    operator = complement.T @ np.einsum("abc,a->bc", T, leader) @ complement
    values, vectors = linalg.eigh(0.5 * (operator + operator.T))
    values, vectors = values[::-1], vectors[:, ::-1]

    columns = []
    for group in _tie_groups(values, scale, config.tie_tol):
        block = complement @ vectors[:, group]
        if group.size > 1:
            columns.append(_refine_eigenspace(T, block, scale, config, generator))
        else:
            columns.append(block)
    return np.hstack(columns)


def _refine_eigenspace(
    T: np.ndarray,
    block: np.ndarray,
    scale: float,
    config: NormalFormConfig,
    generator: np.random.Generator,
) -> np.ndarray:
    """Pick the F-maximizer inside a degenerate eigenspace first, then recurse on the rest."""
    logger.debug(f"refining an eigenspace of dimension {block.shape[1]}")
    restricted = frame_cubic(T, block)
    inner = maximize_form(restricted, config, generator)
    leader = block @ inner.direction
    rest = _complete_frame(T, leader, block, scale, config, generator)
    return np.hstack([leader[:, None], rest])


def build_basis(
    bundle: TensorBundle,
    maximum: Union[CubicMaximum, np.ndarray],
    config: Optional[NormalFormConfig] = None,
) -> NormalForm:
    """
    Complete e1 to the Ejiri basis and express A in it.

    Args:
        maximum: result of maximize_cubic, or a G-unit coordinate vector e1.
    """
    config = config or NormalFormConfig()
    generator = np.random.default_rng(config.seed + 1)
    E = orthonormal_frame(bundle.metric)
    T = frame_cubic(bundle.cubic.A, E)
    n = bundle.dim

    e1 = maximum.vector if isinstance(maximum, CubicMaximum) else np.asarray(maximum, dtype=float)
    # frame coordinates of e1: E u = e1  <=>  u = L^T e1
    u1 = bundle.metric.cholesky.T @ e1
    u1 = u1 / linalg.norm(u1)
    mu1 = float(np.einsum("abc,a,b,c->", T, u1, u1, u1))
    scale = max(abs(mu1), float(np.abs(T).max(initial=0.0)))

    rest = _complete_frame(T, u1, np.eye(n), scale, config, generator)
    U = np.hstack([u1[:, None], rest])
    for i in range(1, n):
        U[:, i] = _fix_sign(T, U[:, i], config.zero_tol * (1.0 + scale))

    cubic = frame_cubic(T, U)
    first_slice = cubic[0]
    spectrum = np.diag(first_slice).copy()
    basis = E @ U
    gram = basis.T @ bundle.metric.G @ basis

    return NormalForm(
        basis=basis,
        spectrum=spectrum,
        frame_cubic=cubic,
        off_diagonal=float(np.abs(first_slice - np.diag(spectrum)).max()),
        orthonormality_defect=float(np.abs(gram - np.eye(n)).max()),
        lagrange_residual=float(linalg.norm(first_slice[0] - mu1 * np.eye(n)[0])),
    )
