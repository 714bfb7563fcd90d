"""
calabi/diag/commute.py

Simultaneous diagonalization of pairwise-commuting real symmetric matrices by
one orthogonal matrix.

A random convex combination of the family is diagonalized first; it separates
every joint eigenspace except on a measure-zero set of weights. Clusters of
(numerically) equal eigenvalues are handled by restricting the whole family to
the cluster and recursing. If a cluster survives although some member is not
scalar on it, that member is diagonalized instead (the sequential construction
of the inductive argument).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from calabi.diag.defaults import CommuteDiagConfig
from calabi.errors import CommutatorViolationError, ConvergenceError, DimensionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymFamily:
    matrices: Tuple[np.ndarray, ...]
    commutator_tol: Optional[float] = None

    @classmethod
    def from_matrices(cls, matrices: Sequence, commutator_tol: Optional[float] = None) -> "SymFamily":
        arrays = tuple(np.array(m, dtype=float) for m in matrices)
        for array in arrays:
            array.setflags(write=False)
        return cls(matrices=arrays, commutator_tol=commutator_tol)

    @property
    def size(self) -> int:
        return len(self.matrices)

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    def validate(self, config: CommuteDiagConfig) -> None:
        """
        Raises:
            DimensionError: empty family, non-square or mismatched shapes.
            ValueError: a member is not symmetric.
            CommutatorViolationError: some pair does not commute.
        """
        if not self.matrices:
            raise DimensionError("empty matrix family")
        n = self.dim
        for k, M in enumerate(self.matrices):
            if M.shape != (n, n):
                raise DimensionError(f"matrix {k} has shape {M.shape}, expected {(n, n)}")
            if not np.all(np.isfinite(M)):
                raise ValueError(f"matrix {k} has non-finite entries")
            norm = linalg.norm(M)
            if np.abs(M - M.T).max() > config.symmetry_tol * (1.0 + norm):
                raise ValueError(f"matrix {k} is not symmetric")

        tol = self.commutator_tol if self.commutator_tol is not None else config.commutator_tol
        for i, j in itertools.combinations(range(self.size), 2):
            A, B = self.matrices[i], self.matrices[j]
            defect = linalg.norm(A @ B - B @ A)
            scale = linalg.norm(A) * linalg.norm(B)
            if defect > tol * scale:
                raise CommutatorViolationError((i, j), defect / scale if scale else defect)


@dataclass(frozen=True)
class Diagonalization:
    # rows are the common eigenvectors: P A^k P^T is diagonal
    P: np.ndarray
    # eigenvalues[k, i] = lambda^k_i
    eigenvalues: np.ndarray
    max_off_diagonal: float
    orthogonality_defect: float
    recursion_depth: int
    residuals: List[float] = field(default_factory=list)

    def reconstruct(self, k: int) -> np.ndarray:
        return self.P.T @ np.diag(self.eigenvalues[k]) @ self.P


def _clusters(values: np.ndarray, gap_factor: float) -> List[np.ndarray]:
    """Split sorted eigenvalues wherever consecutive gaps exceed gap_factor * spectral radius."""
    radius = float(np.abs(values).max()) if values.size else 0.0
    threshold = gap_factor * radius
    breaks = np.flatnonzero(np.diff(values) > threshold) + 1
    return np.split(np.arange(values.size), breaks)


def _is_scalar(M: np.ndarray, gap_factor: float) -> bool:
    mean = np.trace(M) / M.shape[0]
    spread = np.abs(M - mean * np.eye(M.shape[0])).max()
    return spread <= gap_factor * max(1.0, float(np.abs(M).max()))


def _diagonalize_block(
    mats: Sequence[np.ndarray],
    generator: np.random.Generator,
    config: CommuteDiagConfig,
    depth: int,
) -> Tuple[np.ndarray, int]:
    """Orthogonal Q (columns = eigenvectors) for the family restricted to one block."""
    b = mats[0].shape[0]
    if b == 1:
        return np.eye(1), depth

    weights = generator.dirichlet(np.ones(len(mats)))
    combined = sum(w * M for w, M in zip(weights, mats))
    combined = 0.5 * (combined + combined.T)
    values, vectors = linalg.eigh(combined)
    clusters = _clusters(values, config.gap_factor)

    if len(clusters) == 1:
        pending = [k for k, M in enumerate(mats) if not _is_scalar(M, config.gap_factor)]
        if not pending:
            return np.eye(b), depth
        logger.debug(f"combination degenerate on a {b}-block, splitting by member {pending[0]}")
        values, vectors = linalg.eigh(0.5 * (mats[pending[0]] + mats[pending[0]].T))
        clusters = _clusters(values, config.gap_factor)
        if len(clusters) == 1:
            raise ConvergenceError(
                "member is not scalar yet has a single eigenvalue cluster",
                float(np.ptp(values)),
            )

    Q = np.empty((b, b))
    deepest = depth
    for idx in clusters:
        V = vectors[:, idx]
        if idx.size > 1:
            logger.debug(f"recursing into a degenerate cluster of size {idx.size} at depth {depth + 1}")
            restricted = [V.T @ M @ V for M in mats]
            R, reached = _diagonalize_block(restricted, generator, config, depth + 1)
            V = V @ R
            deepest = max(deepest, reached)
        Q[:, idx] = V
    return Q, deepest


def simultaneous_diagonalize(
    family: SymFamily | Sequence,
    config: Optional[CommuteDiagConfig] = None,
) -> Diagonalization:
    """
    One orthogonal P with P A^k P^T diagonal for every member A^k.

    Raises:
        CommutatorViolationError: the family does not commute within tolerance.
        ConvergenceError: some off-diagonal residual stays above 1e-9 (1 + |A^k|).
    """
    config = config or CommuteDiagConfig()
    if not isinstance(family, SymFamily):
        family = SymFamily.from_matrices(family)
    family.validate(config)

    generator = np.random.default_rng(config.seed)
    mats = [0.5 * (M + M.T) for M in family.matrices]
    Q, depth = _diagonalize_block(mats, generator, config, depth=0)
    P = Q.T

    rotated = np.einsum("ia,kab,jb->kij", P, np.stack(mats), P)
    eigenvalues = np.einsum("kii->ki", rotated).copy()
    off = rotated - np.einsum("ki,ij->kij", eigenvalues, np.eye(family.dim))
    residuals = [float(np.abs(o).max()) for o in off]
    orthogonality = float(np.abs(P.T @ P - np.eye(family.dim)).max())

    worst = max(
        (r / (1.0 + linalg.norm(M)) for r, M in zip(residuals, mats)),
        default=0.0,
    )
    if worst > config.residual_tol:
        raise ConvergenceError("simultaneous diagonalization left off-diagonal mass", worst)

    return Diagonalization(
        P=P,
        eigenvalues=eigenvalues,
        max_off_diagonal=max(residuals, default=0.0),
        orthogonality_defect=orthogonality,
        recursion_depth=depth,
        residuals=residuals,
    )
