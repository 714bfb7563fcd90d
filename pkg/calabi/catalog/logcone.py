"""
calabi/catalog/logcone.py

Explicit parametrization of the log-cone graph
    x4 = -1/(2c^2) ln(x1^2 - x2^2 - x3^2)
by y = (y1, y2, y3):
    x = (cosh(c y2) e^{c y1}, cos(c y3) sinh(c y2) e^{c y1}, sin(c y3) sinh(c y2) e^{c y1}, -y1/c)
In these coordinates the Calabi metric is diag(1, 1, sinh^2(c y2)).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from calabi.catalog.surfaces import LogCone, as_function
from calabi.errors import InvalidParametersError
from calabi.jets.jet import eval_jet


def _check(c: float, y: Sequence[float]) -> np.ndarray:
    if not c > 0:
        raise InvalidParametersError(f"log-cone parameter c must be positive, got {c}")
    y = np.asarray(y, dtype=float)
    if y.shape != (3,):
        raise InvalidParametersError(f"expected three parameters (y1, y2, y3), got shape {y.shape}")
    if not y[1] > 0:
        raise InvalidParametersError(f"y2 must be positive to stay on one sheet, got {y[1]}")
    return y


def logcone_param(c: float, y: Sequence[float]) -> np.ndarray:
    y1, y2, y3 = _check(c, y)
    scale = np.exp(c * y1)
    radial = np.sinh(c * y2) * scale
    return np.array(
        [
            np.cosh(c * y2) * scale,
            np.cos(c * y3) * radial,
            np.sin(c * y3) * radial,
            -y1 / c,
        ]
    )


def logcone_jacobian(c: float, y: Sequence[float]) -> np.ndarray:
    """d x / d y as a 4 x 3 array."""
    y1, y2, y3 = _check(c, y)
    x = logcone_param(c, y)
    scale = np.exp(c * y1)
    ch, sh = np.cosh(c * y2), np.sinh(c * y2)
    co, si = np.cos(c * y3), np.sin(c * y3)
    return np.array(
        [
            [c * x[0], c * sh * scale, 0.0],
            [c * x[1], c * co * ch * scale, -c * si * sh * scale],
            [c * x[2], c * si * ch * scale, c * co * sh * scale],
            [-1.0 / c, 0.0, 0.0],
        ]
    )


def graph_residual(c: float, y: Sequence[float]) -> float:
    """|x4 + 1/(2c^2) ln(x1^2 - x2^2 - x3^2)| at the parametrized point."""
    x = logcone_param(c, y)
    # x1^2 - x2^2 - x3^2 = e^{2 c y1} exactly; evaluate as written
    return float(abs(x[3] + np.log(x[0] ** 2 - x[1] ** 2 - x[2] ** 2) / (2 * c**2)))


def pullback_metric(c: float, y: Sequence[float]) -> np.ndarray:
    """J^T Hess f J with J the base part of the parametrization Jacobian."""
    x = logcone_param(c, y)
    base = logcone_jacobian(c, y)[:3]
    hessian = eval_jet(as_function(LogCone(c=c)), x[:3], order=2).hessian()
    return base.T @ hessian @ base


def expected_pullback(c: float, y: Sequence[float]) -> np.ndarray:
    y = _check(c, y)
    return np.diag([1.0, 1.0, np.sinh(c * y[1]) ** 2])
