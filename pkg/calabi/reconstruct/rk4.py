"""
calabi/reconstruct/rk4.py

Classical four-stage Runge-Kutta stepping for z' = rhs(t, z).
"""

from __future__ import annotations

from typing import Callable, Optional, Tuple

import numpy as np

RightHandSide = Callable[[float, np.ndarray], np.ndarray]

# the coarse solution's error is about 16/15 of its distance to the half-step solution
RICHARDSON_FACTOR = 16.0 / 15.0


def rk4_step(rhs: RightHandSide, t: float, z: np.ndarray, h: float) -> np.ndarray:
    k1 = rhs(t, z)
    k2 = rhs(t + 0.5 * h, z + 0.5 * h * k1)
    k3 = rhs(t + 0.5 * h, z + 0.5 * h * k2)
    k4 = rhs(t + h, z + h * k3)
    return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(
    rhs: RightHandSide,
    z0: np.ndarray,
    t0: float,
    t1: float,
    steps: int,
    keep_path: bool = False,
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    `steps` equal RK4 steps from t0 to t1.
    Returns the end state and, if asked, every intermediate state as rows.
    """
    h = (t1 - t0) / steps
    z = np.array(z0, dtype=float)
    path = [z] if keep_path else None
    for k in range(steps):
        z = rk4_step(rhs, t0 + k * h, z, h)
        if keep_path:
            path.append(z)
    return z, (np.stack(path) if keep_path else None)


def linear_step_matrix(M: np.ndarray, h: float) -> np.ndarray:
    """One RK4 step of z' = M z as a matrix: I + hM + (hM)^2/2 + (hM)^3/6 + (hM)^4/24."""
    return rk4_step(lambda _t, Z: M @ Z, 0.0, np.eye(M.shape[0]), h)


def richardson_error(coarse: np.ndarray, fine: np.ndarray) -> float:
    return float(RICHARDSON_FACTOR * np.max(np.abs(coarse - fine), initial=0.0))
