"""
calabi/tensors/holonomy.py

Riemann tensor of the Calabi metric from finite differences of the Christoffel
symbols (the Levi-Civita route). Independent of the Gauss equation used by
curvature_at, so the two can be compared.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from calabi.jets.jet import eval_jet
from calabi.jets.spec import FunctionSpec
from calabi.tensors.defaults import TensorEngineConfig
from calabi.tensors.engine import cubic_at, metric_at


def christoffel_at(f: FunctionSpec, x: Sequence[float]) -> np.ndarray:
    jet = eval_jet(f, x, order=3)
    return cubic_at(jet).Gamma


def christoffel_holonomy_riemann(
    f: FunctionSpec,
    x: Sequence[float],
    config: Optional[TensorEngineConfig] = None,
) -> np.ndarray:
    """
    R_ijkl = G_ia R^a_jkl with
        R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb
    and d_c Gamma by central differences.
    """
    config = config or TensorEngineConfig()
    step = config.holonomy_step
    point = np.asarray(x, dtype=float)
    n = f.dim

    Gamma = christoffel_at(f, point)
    # dGamma[c, a, d, b] = d_c Gamma^a_db
    dGamma = np.empty((n,) + Gamma.shape)
    for c in range(n):
        offset = np.zeros(n)
        offset[c] = step
        dGamma[c] = (christoffel_at(f, point + offset) - christoffel_at(f, point - offset)) / (2 * step)

    upper = (
        np.einsum("cadb->abcd", dGamma)
        - np.einsum("dacb->abcd", dGamma)
        + np.einsum("ace,edb->abcd", Gamma, Gamma)
        - np.einsum("ade,ecb->abcd", Gamma, Gamma)
    )
    G = metric_at(eval_jet(f, point, order=2)).G
    return np.einsum("ia,ajkl->ijkl", G, upper)
