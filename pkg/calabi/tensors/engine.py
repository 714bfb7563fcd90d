"""
calabi/tensors/engine.py

Calabi metric, cubic form, covariant derivative, curvature, Tchebychev field and
Pick invariant at a point, all from one Jet4.

Conventions (0-based coordinate indices, full summation over repeated indices):
    G_ij        = f_ij
    A_ijk       = -1/2 f_ijk
    Gamma^k_ij  = 1/2 f^kl f_ijl
    A_ijk,l     = d_l A_ijk - Gamma^m_li A_mjk - Gamma^m_lj A_imk - Gamma^m_lk A_ijm
    R_ijkl      = f^mh (A_jkm A_hil - A_ikm A_hjl)
    R_ik        = G^jl R_ijkl
    T_l         = (1/n) G^ij A_ijl
    J           = |A|^2 / (n(n-1))
    R           = n(n-1) J - n^2 |T|^2
"""

from __future__ import annotations

import logging
from typing import Optional, Tuple, Union

import numpy as np
from scipy import linalg

from calabi.errors import NotPositiveDefiniteError
from calabi.jets.jet import Jet4
from calabi.jets.spec import FunctionSpec
from calabi.tensors.defaults import TensorEngineConfig
from calabi.tensors.schemas import CubicData, CurvatureData, MetricData, TensorBundle

logger = logging.getLogger(__name__)


def _require_order(jet: Jet4, order: int, what: str) -> None:
    if jet.order < order:
        raise ValueError(f"{what} needs a jet of order >= {order}, got {jet.order}")


def raise_all(tensor: np.ndarray, Ginv: np.ndarray) -> np.ndarray:
    """Raise every index of a covariant tensor with Ginv."""
    out = tensor
    for axis in range(tensor.ndim):
        out = np.moveaxis(np.tensordot(Ginv, out, axes=([1], [axis])), 0, axis)
    return out


def full_norm_sq(tensor: np.ndarray, Ginv: np.ndarray) -> float:
    """G-contracted squared norm of a covariant tensor."""
    return float(np.sum(tensor * raise_all(tensor, Ginv)))


# ─────────────────────────────────────────────────────────────────────────────
# Metric
# ─────────────────────────────────────────────────────────────────────────────


def metric_at(jet: Jet4) -> MetricData:
    """
    Calabi metric G = Hess f with inverse and determinant from a Cholesky factorization.

    Raises:
        NotPositiveDefiniteError: x is outside the strict-convexity domain of f.
    """
    _require_order(jet, 2, "metric")
    G = np.array(jet.hessian())
    try:
        L = linalg.cholesky(G, lower=True, check_finite=True)
    except linalg.LinAlgError:
        smallest = float(linalg.eigvalsh(G)[0])
        logger.debug(f"Hessian at {jet.point} fails Cholesky, min eigenvalue {smallest:.3e}")
        raise NotPositiveDefiniteError(smallest) from None

    Ginv = linalg.cho_solve((L, True), np.eye(jet.dim))
    Ginv = 0.5 * (Ginv + Ginv.T)
    detG = float(np.prod(np.diag(L)) ** 2)
    return MetricData(G=G, Ginv=Ginv, detG=detG, cholesky=L)


# ─────────────────────────────────────────────────────────────────────────────
# Cubic form and its covariant derivative
# ─────────────────────────────────────────────────────────────────────────────


def cubic_at(jet: Jet4, metric: Optional[MetricData] = None) -> CubicData:
    _require_order(jet, 3, "cubic form")
    metric = metric or metric_at(jet)
    f3 = jet.tensor(3)

    A = -0.5 * f3
    Gamma = 0.5 * np.einsum("kl,ijl->kij", metric.Ginv, f3)

    if jet.order < 4:
        return CubicData(A=A, Gamma=Gamma)

    dA = -0.5 * jet.tensor(4)
    CovA = (
        dA
        - np.einsum("mli,mjk->ijkl", Gamma, A)
        - np.einsum("mlj,imk->ijkl", Gamma, A)
        - np.einsum("mlk,ijm->ijkl", Gamma, A)
    )
    return CubicData(A=A, Gamma=Gamma, CovA=CovA)


# ─────────────────────────────────────────────────────────────────────────────
# Curvature
# ─────────────────────────────────────────────────────────────────────────────


def riemann_from_cubic(A: np.ndarray, Ginv: np.ndarray) -> np.ndarray:
    return np.einsum("mh,jkm,hil->ijkl", Ginv, A, A) - np.einsum("mh,ikm,hjl->ijkl", Ginv, A, A)


def riemann_symmetry_defect(Riem: np.ndarray) -> float:
    return float(
        max(
            np.abs(Riem + Riem.transpose(1, 0, 2, 3)).max(),
            np.abs(Riem + Riem.transpose(0, 1, 3, 2)).max(),
            np.abs(Riem - Riem.transpose(2, 3, 0, 1)).max(),
        )
    )


def bianchi_defect(Riem: np.ndarray) -> float:
    cyclic = Riem + np.einsum("iklj->ijkl", Riem) + np.einsum("iljk->ijkl", Riem)
    return float(np.abs(cyclic).max())


def curvature_at(
    jet: Jet4,
    metric: Optional[MetricData] = None,
    cubic: Optional[CubicData] = None,
) -> CurvatureData:
    _require_order(jet, 3, "curvature")
    metric = metric or metric_at(jet)
    cubic = cubic or cubic_at(jet, metric)
    n = jet.dim
    A, Ginv = cubic.A, metric.Ginv

    Riem = riemann_from_cubic(A, Ginv)
    Ric = np.einsum("jl,ijkl->ik", Ginv, Riem)
    scalar_trace = float(np.einsum("ik,ik->", Ginv, Ric))

    T_lower = np.einsum("ij,ijl->l", Ginv, A) / n
    T_upper = Ginv @ T_lower
    cubic_norm_sq = full_norm_sq(A, Ginv)
    pick = cubic_norm_sq / (n * (n - 1)) if n >= 2 else None
    scalar_formula = cubic_norm_sq - n * n * float(T_lower @ T_upper)

    return CurvatureData(
        Riem=Riem,
        Ric=Ric,
        scalar_trace=scalar_trace,
        scalar_formula=scalar_formula,
        T_upper=T_upper,
        T_lower=T_lower,
        pick=pick,
        cubic_norm_sq=cubic_norm_sq,
        riem_norm_sq=full_norm_sq(Riem, Ginv),
        cov_a_norm_sq=None if cubic.CovA is None else full_norm_sq(cubic.CovA, Ginv),
        symmetry_defect=riemann_symmetry_defect(Riem),
        bianchi_defect=bianchi_defect(Riem),
    )


# ─────────────────────────────────────────────────────────────────────────────
# Extremal PDE, Tchebychev potential, parallel residuals
# ─────────────────────────────────────────────────────────────────────────────


def log_det_gradient(jet: Jet4, Ginv: np.ndarray) -> np.ndarray:
    """d_l ln det f_ij = f^ij f_ijl."""
    return np.einsum("ij,ijl->l", Ginv, jet.tensor(3))


def extremal_residual(
    jet: Jet4,
    f: Optional[FunctionSpec] = None,
    metric: Optional[MetricData] = None,
    cubic: Optional[CubicData] = None,
) -> float:
    """
    Calabi Laplacian of phi = ln det Hess f at the point:
        Delta phi = G^kl (d_k d_l phi - Gamma^m_kl d_m phi)
    with d_k d_l phi = -f^ia f_abl f^bj f_ijk + f^ij f_ijkl.
    """
    _require_order(jet, 4, "extremal residual")
    metric = metric or metric_at(jet)
    cubic = cubic or cubic_at(jet, metric)
    Ginv = metric.Ginv
    f3, f4 = jet.tensor(3), jet.tensor(4)

    grad_phi = log_det_gradient(jet, Ginv)
    hess_phi = -np.einsum("ia,abl,bj,ijk->kl", Ginv, f3, Ginv, f3) + np.einsum("ij,ijkl->kl", Ginv, f4)
    covariant = hess_phi - np.einsum("mkl,m->kl", cubic.Gamma, grad_phi)
    value = float(np.einsum("kl,kl->", Ginv, covariant))
    if f is not None:
        logger.debug(f"extremal residual of {f.label} at {jet.point}: {value:.3e}")
    return value


def tchebychev_from_log_det(jet: Jet4, config: Optional[TensorEngineConfig] = None) -> np.ndarray:
    """
    T_l = -(1/2n) d_l ln det(f_ij), differentiating ln det of the Hessian's
    first-order Taylor model by complex step (no Jacobi formula involved).
    """
    _require_order(jet, 3, "Tchebychev potential")
    config = config or TensorEngineConfig()
    h = config.complex_step
    H = jet.hessian()
    f3 = jet.tensor(3)
    grad = np.empty(jet.dim)
    for l in range(jet.dim):
        sign, _ = np.linalg.slogdet(H + 1j * h * f3[:, :, l])
        grad[l] = np.angle(sign) / h
    return -grad / (2 * jet.dim)


def aa_contraction(A: np.ndarray, Ginv: np.ndarray) -> np.ndarray:
    """(AA)_ij = G^pr G^qs A_ipq A_jrs."""
    return np.einsum("ipq,pr,qs,jrs->ij", A, Ginv, Ginv, A)


def parallel_rhs_checks(source: Union[Jet4, TensorBundle]) -> Tuple[float, float]:
    """
    Algebraic right-hand sides of the Laplacian identities for |T|^2 and J on a
    surface with parallel cubic form:
        |R_ij T^i T^j|   and   ||Riem||^2 + R^ij (AA)_ij
    Both vanish when nabla A = 0.
    """
    bundle = source if isinstance(source, TensorBundle) else bundle_at(source)
    Ginv = bundle.metric.Ginv
    curvature = bundle.curvature

    first = abs(float(curvature.T_upper @ curvature.Ric @ curvature.T_upper))
    ric_upper = Ginv @ curvature.Ric @ Ginv
    second = abs(
        curvature.riem_norm_sq
        + float(np.einsum("ij,ij->", ric_upper, aa_contraction(bundle.cubic.A, Ginv)))
    )
    return first, second


def bundle_at(jet: Jet4) -> TensorBundle:
    metric = metric_at(jet)
    cubic = cubic_at(jet, metric)
    curvature = curvature_at(jet, metric, cubic)
    extremal = extremal_residual(jet, metric=metric, cubic=cubic) if jet.order >= 4 else None
    return TensorBundle(jet=jet, metric=metric, cubic=cubic, curvature=curvature, extremal=extremal)
