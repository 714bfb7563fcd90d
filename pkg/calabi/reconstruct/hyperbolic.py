"""
calabi/reconstruct/hyperbolic.py

Frame system of the log-cone in the coordinates y = (y1, y2, y3) where its
Calabi metric is dy1^2 + dy2^2 + sinh^2(c y2) dy3^2. With X_i = dx/dy_i and
Y = (0, 0, 0, 1):

    d X_1/dy_1 = c X_1 + Y          d X_1/dy_2 = c X_2            d X_1/dy_3 = c X_3
    d X_2/dy_2 = c X_1 + Y          d X_2/dy_3 = c coth(c y2) X_3
    d X_3/dy_3 = c sinh^2 X_1 - c sinh cosh X_2 + sinh^2 Y

Integrated along a straight segment in y, starting from the exact position and
Jacobian of logcone_param, and compared with logcone_param at the far end.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from calabi.catalog.logcone import logcone_jacobian, logcone_param
from calabi.errors import InvalidParametersError, StepCountError
from calabi.reconstruct.defaults import ReconstructConfig
from calabi.reconstruct.rk4 import integrate, richardson_error

logger = logging.getLogger(__name__)

Y = np.array([0.0, 0.0, 0.0, 1.0])


@dataclass(frozen=True)
class HyperbolicPath:
    c: float
    y_start: np.ndarray
    y_end: np.ndarray
    position: np.ndarray
    # 4 x 3, columns dx/dy_i
    jacobian: np.ndarray
    error_estimate: float

    @property
    def deviation(self) -> float:
        """Largest gap to the closed-form position at y_end."""
        return float(np.abs(self.position - logcone_param(self.c, self.y_end)).max())

    @property
    def jacobian_deviation(self) -> float:
        return float(np.abs(self.jacobian - logcone_jacobian(self.c, self.y_end)).max())


def second_derivatives(c: float, y2: float, X: np.ndarray) -> np.ndarray:
    """H[i, k] = d^2 x / dy_i dy_k, symmetric in (i, k); X has rows X_1, X_2, X_3."""
    sh, ch = np.sinh(c * y2), np.cosh(c * y2)
    X1, X2, X3 = X
    H = np.empty((3, 3, 4))
    H[0, 0] = c * X1 + Y
    H[0, 1] = H[1, 0] = c * X2
    H[0, 2] = H[2, 0] = c * X3
    H[1, 1] = c * X1 + Y
    H[1, 2] = H[2, 1] = c * (ch / sh) * X3
    H[2, 2] = c * sh**2 * X1 - c * sh * ch * X2 + sh**2 * Y
    return H


def integrate_hyperbolic(
    c: float,
    y_start: Sequence[float],
    y_end: Sequence[float],
    steps: Optional[int] = None,
    config: Optional[ReconstructConfig] = None,
) -> HyperbolicPath:
    """
    State (x, X_1, X_2, X_3) along y(t) = y_start + t (y_end - y_start), t in [0, 1].

    Raises:
        InvalidParametersError: c <= 0 or an endpoint has y2 <= 0 (the segment
            then leaves the sheet where coth(c y2) is finite).
        StepCountError: the error estimate exceeds config.error_tol.
    """
    config = config or ReconstructConfig()
    steps = config.hyperbolic_steps if steps is None else steps
    if steps < 1:
        raise InvalidParametersError(f"need at least one step, got {steps}")
    start = np.asarray(y_start, dtype=float)
    end = np.asarray(y_end, dtype=float)
    # validates c and both endpoints
    x0 = logcone_param(c, start)
    logcone_param(c, end)
    direction = end - start

    def rhs(t: float, z: np.ndarray) -> np.ndarray:
        X = z[4:].reshape(3, 4)
        H = second_derivatives(c, start[1] + t * direction[1], X)
        dx = direction @ X
        dX = np.einsum("k,ikd->id", direction, H)
        return np.concatenate([dx, dX.ravel()])

    z0 = np.concatenate([x0, logcone_jacobian(c, start).T.ravel()])
    z, _ = integrate(rhs, z0, 0.0, 1.0, steps)
    fine, _ = integrate(rhs, z0, 0.0, 1.0, 2 * steps)
    error = richardson_error(z, fine)
    if error > config.error_tol:
        raise StepCountError(steps, error, config.error_tol)
    logger.debug(f"hyperbolic frames: {steps} steps, error estimate {error:.2e}")

    return HyperbolicPath(
        c=float(c),
        y_start=start,
        y_end=end,
        position=z[:4],
        jacobian=z[4:].reshape(3, 4).T,
        error_estimate=error,
    )
