"""
calabi/catalog/sampling.py

Seeded, domain-aware random points on catalog surfaces. Points are kept away
from the boundary of the convexity domain, where the Hessian degenerates.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from calabi.catalog.defaults import CatalogConfig
from calabi.catalog.surfaces import CatalogSurface, LogCone, Paraboloid, QSurface

logger = logging.getLogger(__name__)


def _log_cone_points(count: int, generator: np.random.Generator, config: CatalogConfig) -> np.ndarray:
    accepted = np.empty((0, 3))
    drawn = 0
    while accepted.shape[0] < count:
        batch = np.column_stack(
            [
                generator.uniform(config.cone_low, config.cone_high, 2 * count),
                generator.uniform(-config.box, config.box, (2 * count, 2)),
            ]
        )
        drawn += batch.shape[0]
        # the Hessian condition number grows with |(x2, x3)| / x1, not with x1 itself
        inside = np.hypot(batch[:, 1], batch[:, 2]) <= config.cone_ratio * batch[:, 0]
        accepted = np.vstack([accepted, batch[inside]])
    logger.debug(f"log-cone sampler kept {count} of {drawn} draws")
    return accepted[:count]


def sample_points(
    surface: CatalogSurface,
    count: int,
    generator: np.random.Generator,
    config: Optional[CatalogConfig] = None,
) -> np.ndarray:
    """`count` points of the domain as a (count, n) array, reproducible for a seeded generator."""
    config = config or CatalogConfig()
    match surface:
        case Paraboloid(n=n):
            return generator.uniform(-config.box, config.box, (count, n))
        case QSurface(n=n):
            points = generator.uniform(-config.box, config.box, (count, n))
            points[:, : surface.r] = generator.uniform(config.log_low, config.log_high, (count, surface.r))
            return points
        case LogCone():
            return _log_cone_points(count, generator, config)
    raise TypeError(f"not a catalog surface: {surface!r}")
