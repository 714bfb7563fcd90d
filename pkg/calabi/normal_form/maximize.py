"""
calabi/normal_form/maximize.py

Absolute maximum of F(v) = A(v, v, v) on the G-unit sphere.

Work happens in a G-orthonormal frame E (E^T G E = I), where the sphere is the
round one and A becomes the symmetric tensor T = A(E., E., E.).
Multistart shifted symmetric power iterations find the convex maxima; the best
candidates are polished by Riemannian Newton steps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

from calabi.errors import ConvergenceError, DimensionError
from calabi.normal_form.defaults import NormalFormConfig
from calabi.tensors.schemas import MetricData, TensorBundle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SphereMaximum:
    direction: np.ndarray
    value: float
    residual: float


@dataclass(frozen=True)
class CubicMaximum:
    # G-unit coordinate vector e1 and mu1 = A(e1, e1, e1)
    vector: np.ndarray
    value: float
    # e1 in the orthonormal frame, and the frame itself
    direction: np.ndarray
    frame: np.ndarray
    residual: float


def orthonormal_frame(metric: MetricData) -> np.ndarray:
    """Columns form a G-orthonormal basis: E = L^-T with G = L L^T."""
    return linalg.solve_triangular(metric.cholesky, np.eye(metric.dim), lower=True).T


def frame_cubic(A: np.ndarray, E: np.ndarray) -> np.ndarray:
    return np.einsum("ijk,ia,jb,kc->abc", A, E, E, E)


def cubic_values(T: np.ndarray, U: np.ndarray) -> np.ndarray:
    return np.einsum("abc,sa,sb,sc->s", T, U, U, U)


def lagrange_residual(T: np.ndarray, u: np.ndarray) -> float:
    g = np.einsum("abc,b,c->a", T, u, u)
    return float(linalg.norm(g - (u @ g) * u))


def _normalize_rows(U: np.ndarray) -> np.ndarray:
    return U / linalg.norm(U, axis=1)[:, None]


def _starting_points(k: int, count: int, generator: np.random.Generator) -> np.ndarray:
    axes = np.vstack([np.eye(k), -np.eye(k)])
    extra = max(count - 2 * k, 0)
    if not extra:
        return axes
    return np.vstack([axes, _normalize_rows(generator.standard_normal((extra, k)))])


def _shifted_power(T: np.ndarray, U: np.ndarray, config: NormalFormConfig) -> np.ndarray:
    # a shift above 2|T|_F makes every start ascend monotonically
    alpha = 2.0 * float(linalg.norm(T.ravel())) + 1e-12
    for _ in range(config.power_iterations):
        V = _normalize_rows(np.einsum("abc,sb,sc->sa", T, U, U) + alpha * U)
        if np.abs(V - U).max() < config.power_tol:
            return V
        U = V
    return U


def _newton_polish(T: np.ndarray, u: np.ndarray, steps: int) -> np.ndarray:
    k = u.size
    scale = 1.0 + float(linalg.norm(T.ravel()))
    for _ in range(steps):
        g = np.einsum("abc,b,c->a", T, u, u)
        value = float(u @ g)
        B = linalg.null_space(u[None, :])
        grad = 3.0 * (B.T @ g)
        if linalg.norm(grad) < 1e-15 * scale:
            break
        hess = B.T @ (6.0 * np.einsum("abc,a->bc", T, u) - 3.0 * value * np.eye(k)) @ B
        step = linalg.lstsq(hess, -grad)[0]
        u = u + B @ step
        u = u / linalg.norm(u)
    return u


def maximize_form(
    T: np.ndarray,
    config: Optional[NormalFormConfig] = None,
    generator: Optional[np.random.Generator] = None,
) -> SphereMaximum:
    """
    Largest critical value of u -> T(u, u, u) on the round unit sphere.

    Raises:
        ConvergenceError: no candidate satisfies the Lagrange condition.
    """
    config = config or NormalFormConfig()
    generator = generator or np.random.default_rng(config.seed)
    k = T.shape[0]

    if np.abs(T).max(initial=0.0) < config.zero_tol:
        return SphereMaximum(direction=np.eye(k)[0], value=0.0, residual=0.0)
    if k == 1:
        sign = 1.0 if T[0, 0, 0] >= 0 else -1.0
        return SphereMaximum(direction=np.array([sign]), value=abs(float(T[0, 0, 0])), residual=0.0)

    U = _shifted_power(T, _starting_points(k, config.starts, generator), config)
    values = cubic_values(T, U)
    order = np.argsort(-values, kind="stable")

    tol = config.lagrange_tol * (1.0 + float(np.abs(T).max()))
    best: Optional[SphereMaximum] = None
    worst_residual = 0.0
    for idx in order[: config.polish_candidates]:
        start = U[idx]
        polished = _newton_polish(T, start, config.newton_steps)
        # Newton may slide to a nearby saddle; never accept a lower value
        candidate = polished if cubic_values(T, polished[None])[0] >= values[idx] - tol else start
        residual = lagrange_residual(T, candidate)
        value = float(cubic_values(T, candidate[None])[0])
        if residual > tol:
            worst_residual = max(worst_residual, residual)
            logger.warning(f"discarding start with Lagrange residual {residual:.3e}")
            continue
        if best is None or value > best.value:
            best = SphereMaximum(direction=candidate, value=value, residual=residual)

    if best is None:
        raise ConvergenceError(
            "no multistart satisfied the Lagrange condition",
            worst_residual,
            candidate=U[order[0]].tolist(),
        )
    logger.debug(f"sphere maximum {best.value:.12g} (residual {best.residual:.2e})")
    return best


def maximize_cubic(bundle: TensorBundle, config: Optional[NormalFormConfig] = None) -> CubicMaximum:
    """
    G-unit e1 maximizing F(v) = A(v, v, v), and mu1 = F(e1) >= 0.

    Raises:
        DimensionError: n < 2.
        ConvergenceError: the multistart search did not reach a critical point.
    """
    config = config or NormalFormConfig()
    if bundle.dim < 2:
        raise DimensionError("cubic maximization needs n >= 2")
    E = orthonormal_frame(bundle.metric)
    T = frame_cubic(bundle.cubic.A, E)
    best = maximize_form(T, config)
    return CubicMaximum(
        vector=E @ best.direction,
        value=best.value,
        direction=best.direction,
        frame=E,
        residual=best.residual,
    )
