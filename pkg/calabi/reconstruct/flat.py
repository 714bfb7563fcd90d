"""
calabi/reconstruct/flat.py

Flat hypersurfaces with parallel cubic form, rebuilt from their constant
diagonal cubic values a_1 >= ... >= a_r > 0.

Along the ray t -> t v the frame vectors and the position vector of R^{n+1} obey

    d/dt e_i = a_i v_i e_i + v_i Y        e_i(0) = i-th standard basis vector
    d/dt x   = sum_i v_i e_i              x(0)   = 0

with Y = (0, ..., 0, 1). At t = 1:

    x_i     = (exp(a_i v_i) - 1) / a_i                          i < r
    x_j     = v_j                                               j >= r
    x_{n+1} = sum_{i<r} [(exp(a_i v_i) - 1) / a_i^2 - v_i / a_i] + 1/2 sum_{j>=r} v_j^2
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from calabi.affine.group import AffineMap
from calabi.catalog.surfaces import CatalogSurface, Paraboloid, QSurface, as_function
from calabi.diag import simultaneous_diagonalize
from calabi.errors import DimensionError, InvalidParametersError, StepCountError
from calabi.jets.jet import evaluate
from calabi.jets.spec import FunctionSpec
from calabi.reconstruct.defaults import ReconstructConfig
from calabi.reconstruct.rk4 import linear_step_matrix, richardson_error
from calabi.reconstruct.schemas import FlatParallelData

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FramePath:
    times: np.ndarray
    # positions[k] = x(times[k]) in R^{n+1}
    positions: np.ndarray
    # rows are e_1(1) .. e_n(1)
    frames: np.ndarray
    error_estimate: float
    steps: int

    @property
    def x(self) -> np.ndarray:
        return self.positions[-1]


# ─────────────────────────────────────────────────────────────────────────────
# Integration
# ─────────────────────────────────────────────────────────────────────────────


def _generator(data: FlatParallelData) -> np.ndarray:
    """
    z' = M z for the state z = (e_1, ..., e_n, x, 1); the trailing constant
    carries the inhomogeneous Y terms.
    """
    n, width = data.n, data.n + 1
    size = n * width + width + 1
    a, v = data.cubic_diagonal, data.rays
    x_offset, one = n * width, size - 1

    M = np.zeros((size, size))
    for i in range(n):
        block = slice(i * width, (i + 1) * width)
        M[block, block] = a[i] * v[i] * np.eye(width)
        M[i * width + n, one] = v[i]
        M[x_offset : x_offset + width, block] += v[i] * np.eye(width)
    return M


def _initial_state(data: FlatParallelData) -> np.ndarray:
    n, width = data.n, data.n + 1
    z0 = np.zeros(n * width + width + 1)
    z0[: n * width] = np.eye(n, width).ravel()
    z0[-1] = 1.0
    return z0


def integrate_frames(
    data: FlatParallelData,
    steps: Optional[int] = None,
    config: Optional[ReconstructConfig] = None,
) -> FramePath:
    """
    RK4 on t in [0, 1]; the error of x(1) is estimated against a run with twice
    the steps.

    Raises:
        StepCountError: the error estimate exceeds config.error_tol.
    """
    config = config or ReconstructConfig()
    steps = config.steps if steps is None else steps
    if steps < 1:
        raise InvalidParametersError(f"need at least one step, got {steps}")

    n, width = data.n, data.n + 1
    M = _generator(data)
    S = linear_step_matrix(M, 1.0 / steps)
    z = _initial_state(data)
    x_slice = slice(n * width, n * width + width)

    positions = np.empty((steps + 1, width))
    positions[0] = z[x_slice]
    for k in range(steps):
        z = S @ z
        positions[k + 1] = z[x_slice]

    fine = np.linalg.matrix_power(linear_step_matrix(M, 0.5 / steps), 2 * steps) @ _initial_state(data)
    error = richardson_error(z, fine)
    if error > config.error_tol:
        raise StepCountError(steps, error, config.error_tol)
    logger.debug(f"flat frames: {steps} steps, error estimate {error:.2e}")

    return FramePath(
        times=np.linspace(0.0, 1.0, steps + 1),
        positions=positions,
        frames=z[: n * width].reshape(n, width),
        error_estimate=error,
        steps=steps,
    )


def closed_form(data: FlatParallelData) -> np.ndarray:
    """x(1) in R^{n+1}."""
    a, v, r = data.cubic_diagonal, data.rays, data.r
    x = np.empty(data.n + 1)
    grow = np.expm1(a[:r] * v[:r])
    x[:r] = grow / a[:r]
    x[r : data.n] = v[r:]
    x[data.n] = float(np.sum(grow / a[:r] ** 2 - v[:r] / a[:r]) + 0.5 * np.sum(v[r:] ** 2))
    return x


# ─────────────────────────────────────────────────────────────────────────────
# The reconstructed graph
# ─────────────────────────────────────────────────────────────────────────────


def _base(data: FlatParallelData, x: Sequence[float]) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (data.n,):
        raise DimensionError(f"expected {data.n} base coordinates, got shape {x.shape}")
    a = np.asarray(data.diag)
    if np.any(a * x[: data.r] + 1.0 <= 0.0):
        raise InvalidParametersError(f"{x.tolist()} is outside the reconstructed graph's domain")
    return x


def graph_height(data: FlatParallelData, x: Sequence[float]) -> float:
    """x_{n+1} = sum_i [x_i/a_i - ln(a_i x_i + 1)/a_i^2] + 1/2 sum_j x_j^2 on the reconstructed graph."""
    x = _base(data, x)
    a, r = np.asarray(data.diag), data.r
    return float(np.sum(x[:r] / a - np.log1p(a * x[:r]) / a**2) + 0.5 * np.sum(x[r:] ** 2))


def solve_rays(data: FlatParallelData, x: Sequence[float]) -> np.ndarray:
    """The ray v whose endpoint has base coordinates x."""
    x = _base(data, x)
    a, r = np.asarray(data.diag), data.r
    v = x.copy()
    v[:r] = np.log1p(a * x[:r]) / a
    return v


def recovered_surface(data: FlatParallelData) -> CatalogSurface:
    if data.r == 0:
        return Paraboloid(n=data.n)
    return QSurface(c=data.weights, n=data.n)


def recovered_function(data: FlatParallelData) -> FunctionSpec:
    """Q(1/a_1^2, ..., 1/a_r^2; n), or the paraboloid when r = 0."""
    return as_function(recovered_surface(data))


def equivalence_to_catalog(data: FlatParallelData) -> AffineMap:
    """
    The element of SA(n+1) carrying the reconstructed graph onto the graph of
    recovered_function: y_i = a_i x_i + 1 for i < r, y_j = x_j, and the height
    loses its linear part sum_i x_i / a_i.
    """
    a = data.cubic_diagonal
    r = data.r
    scale = np.ones(data.n)
    scale[:r] = a[:r]
    shear = np.zeros(data.n)
    shear[:r] = -1.0 / a[:r]
    translate = np.zeros(data.n + 1)
    translate[:r] = 1.0
    return AffineMap.create(np.diag(scale), shear, translate)


def graph_equivalence_defect(data: FlatParallelData, point: Sequence[float]) -> float:
    """|y_{n+1} - Q(y)| for y = phi(point), phi from equivalence_to_catalog."""
    y = equivalence_to_catalog(data).apply(np.asarray(point, dtype=float))
    return abs(float(y[-1]) - evaluate(recovered_function(data), y[:-1]))


# ─────────────────────────────────────────────────────────────────────────────
# General constant cubic forms
# ─────────────────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class DiagonalCubic:
    # a_1 >= ... >= a_n >= 0
    values: np.ndarray
    # rows: orthonormal directions in which the cubic is diagonal, same order as values
    basis: np.ndarray
    off_diagonal: float


def diagonal_form(T: np.ndarray, config: Optional[ReconstructConfig] = None) -> DiagonalCubic:
    """
    Diagonalize a constant fully symmetric cubic on an orthonormal frame by
    simultaneously diagonalizing its slices T[:, :, k].

    Raises:
        CommutatorViolationError: the slices do not commute, so T is not of diagonal type.
    """
    config = config or ReconstructConfig()
    T = np.asarray(T, dtype=float)
    n = T.shape[0]
    if T.shape != (n, n, n):
        raise DimensionError(f"expected an n x n x n cubic, got shape {T.shape}")

    P = simultaneous_diagonalize([T[:, :, k] for k in range(n)]).P
    rotated = np.einsum("abc,ia,jb,kc->ijk", T, P, P, P)
    values = np.einsum("iii->i", rotated).copy()
    signs = np.where(values < 0, -1.0, 1.0)
    P = P * signs[:, None]
    values = np.abs(values)
    values[values < config.zero_tol * max(1.0, values.max(initial=0.0))] = 0.0

    order = np.argsort(-values, kind="stable")
    P, values = P[order], values[order]
    rotated = np.einsum("abc,ia,jb,kc->ijk", T, P, P, P)
    off = rotated.copy()
    off[np.arange(n), np.arange(n), np.arange(n)] = 0.0
    return DiagonalCubic(values=values, basis=P, off_diagonal=float(np.abs(off).max(initial=0.0)))


def flat_data_from_cubic(
    T: np.ndarray,
    v: Optional[Sequence[float]] = None,
    config: Optional[ReconstructConfig] = None,
) -> FlatParallelData:
    diagonal = diagonal_form(T, config)
    positive = tuple(float(a) for a in diagonal.values if a > 0.0)
    return FlatParallelData.build(n=len(diagonal.values), diag=positive, v=v)
