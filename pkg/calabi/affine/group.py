"""
calabi/affine/group.py

Elements of SA(n+1): affine maps of R^{n+1} whose linear part fixes the
transversal direction Y = (0, ..., 0, 1). In block form

    | a       0 |   | x       |   | b_base |
    | shear   1 | . | x_{n+1} | + | b_last |

so graphs of functions map to graphs of functions:
    f~(a x + b_base) = f(x) + shear . x + b_last
"""

from __future__ import annotations

import math
from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator
from scipy.stats import ortho_group

from calabi.errors import InvalidParametersError, SingularMapError

# condition number above which the linear block counts as singular
SINGULAR_CONDITION = 1e12


def _rows(matrix: np.ndarray) -> Tuple[Tuple[float, ...], ...]:
    return tuple(tuple(float(v) for v in row) for row in matrix)


def _orthogonal(n: int, generator: np.random.Generator) -> np.ndarray:
    if n == 1:
        return np.array([[generator.choice([-1.0, 1.0])]])
    return ortho_group.rvs(n, random_state=generator)


class AffineMap(BaseModel):
    model_config = ConfigDict(frozen=True)

    linear: Tuple[Tuple[float, ...], ...]
    shear: Tuple[float, ...]
    translate: Tuple[float, ...]

    @model_validator(mode="after")
    def block_shapes(self) -> "AffineMap":
        n = len(self.linear)
        if n < 1 or any(len(row) != n for row in self.linear):
            raise ValueError(f"linear block must be square and non-empty, got {n} rows")
        if len(self.shear) != n:
            raise ValueError(f"shear row has {len(self.shear)} entries, expected {n}")
        if len(self.translate) != n + 1:
            raise ValueError(f"translation has {len(self.translate)} entries, expected {n + 1}")
        values = [v for row in self.linear for v in row] + list(self.shear) + list(self.translate)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("affine map entries must be finite")
        return self

    # ─────────────────────────────────────────────────────────────────────────
    # Construction
    # ─────────────────────────────────────────────────────────────────────────

    @classmethod
    def create(
        cls,
        linear: Sequence[Sequence[float]],
        shear: Sequence[float],
        translate: Sequence[float],
    ) -> "AffineMap":
        """
        Raises:
            InvalidParametersError: inconsistent block shapes or non-finite entries.
            SingularMapError: the linear block is not invertible.
        """
        try:
            phi = cls(
                linear=_rows(np.asarray(linear, dtype=float)),
                shear=tuple(float(v) for v in shear),
                translate=tuple(float(v) for v in translate),
            )
        except (ValidationError, ValueError) as exc:
            raise InvalidParametersError(f"invalid affine map: {exc}") from exc
        phi.check_invertible()
        return phi

    @classmethod
    def from_json(cls, text: str) -> "AffineMap":
        try:
            phi = cls.model_validate_json(text)
        except ValidationError as exc:
            raise InvalidParametersError(f"invalid affine map: {exc}") from exc
        phi.check_invertible()
        return phi

    @classmethod
    def from_matrix(cls, M: np.ndarray, b: Sequence[float]) -> "AffineMap":
        M = np.asarray(M, dtype=float)
        n = M.shape[0] - 1
        if M.shape != (n + 1, n + 1) or not np.allclose(M[:n, n], 0.0) or not np.isclose(M[n, n], 1.0):
            raise InvalidParametersError("matrix does not fix the direction (0, ..., 0, 1)")
        return cls.create(M[:n, :n], M[n, :n], b)

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls.create(np.eye(n), np.zeros(n), np.zeros(n + 1))

    @classmethod
    def random(
        cls,
        n: int,
        generator: np.random.Generator,
        spread: float = 0.5,
        shift: float = 1.0,
    ) -> "AffineMap":
        """U diag(s) V with log s uniform in [-spread, spread]; shear and translation uniform in [-shift, shift]."""
        singular_values = np.exp(generator.uniform(-spread, spread, n))
        linear = _orthogonal(n, generator) @ np.diag(singular_values) @ _orthogonal(n, generator)
        return cls.create(
            linear,
            generator.uniform(-shift, shift, n),
            generator.uniform(-shift, shift, n + 1),
        )

    # ─────────────────────────────────────────────────────────────────────────
    # Blocks
    # ─────────────────────────────────────────────────────────────────────────

    @property
    def n(self) -> int:
        return len(self.linear)

    @property
    def a(self) -> np.ndarray:
        return np.array(self.linear, dtype=float)

    @property
    def b(self) -> np.ndarray:
        return np.array(self.translate, dtype=float)

    @property
    def determinant(self) -> float:
        return float(np.linalg.det(self.a))

    def check_invertible(self) -> None:
        if np.linalg.cond(self.a) > SINGULAR_CONDITION:
            raise SingularMapError(self.determinant)

    def matrix(self) -> np.ndarray:
        """The (n+1) x (n+1) linear part; its last column is (0, ..., 0, 1)."""
        M = np.eye(self.n + 1)
        M[: self.n, : self.n] = self.a
        M[self.n, : self.n] = self.shear
        return M

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.matrix(), np.eye(self.n + 1)) and not np.any(self.b))

    # ─────────────────────────────────────────────────────────────────────────
    # Action on points
    # ─────────────────────────────────────────────────────────────────────────

    def apply(self, X: Sequence) -> np.ndarray:
        """Points of R^{n+1}, one per row (or a single point)."""
        X = np.asarray(X, dtype=float)
        return X @ self.matrix().T + self.b

    def base_map(self, x: Sequence) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return x @ self.a.T + self.b[: self.n]

    def inverse_base_map(self, y: Sequence) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        return np.linalg.solve(self.a, (y - self.b[: self.n]).T).T

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self o other: first other, then self."""
        if other.n != self.n:
            raise InvalidParametersError(f"cannot compose maps of dimensions {self.n} and {other.n}")
        M = self.matrix() @ other.matrix()
        return AffineMap.from_matrix(M, self.matrix() @ other.b + self.b)

    def inverse(self) -> "AffineMap":
        self.check_invertible()
        M_inv = np.linalg.inv(self.matrix())
        return AffineMap.from_matrix(M_inv, -M_inv @ self.b)
