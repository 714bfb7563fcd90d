"""
calabi/jets/taylor.py

Truncated multivariate Taylor arithmetic.

A TaylorJet holds the coefficients c_a = (d^a f)(x0) / a! of every monomial of
total degree <= order, one slot per sorted multi-index (i1 <= ... <= ik).
Products are plain convolutions of these coefficients; elementary functions act
through their univariate Taylor series in the nilpotent part.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

MultiIndex = Tuple[int, ...]


class MonomialBasis:
    """Monomials of degree <= order in n variables, graded then lexicographic."""

    def __init__(self, n: int, order: int):
        self.n = n
        self.order = order
        self.indices: List[MultiIndex] = [
            combo
            for degree in range(order + 1)
            for combo in itertools.combinations_with_replacement(range(n), degree)
        ]
        self.lookup: Dict[MultiIndex, int] = {idx: pos for pos, idx in enumerate(self.indices)}
        self.size = len(self.indices)
        self.degrees = np.array([len(idx) for idx in self.indices], dtype=int)
        # a! for each sorted multi-index
        self.factorials = np.array(
            [math.prod(math.factorial(idx.count(i)) for i in set(idx)) for idx in self.indices],
            dtype=float,
        )
        self._build_product_table()
        self._dense_maps: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}

    def _build_product_table(self) -> None:
        left, right, target = [], [], []
        for a, idx_a in enumerate(self.indices):
            for b, idx_b in enumerate(self.indices):
                if len(idx_a) + len(idx_b) <= self.order:
                    left.append(a)
                    right.append(b)
                    target.append(self.lookup[tuple(sorted(idx_a + idx_b))])
        self.mul_left = np.array(left, dtype=int)
        self.mul_right = np.array(right, dtype=int)
        self.mul_target = np.array(target, dtype=int)

    def position(self, indices: Sequence[int]) -> int:
        return self.lookup[tuple(sorted(indices))]

    def dense_map(self, k: int) -> Tuple[np.ndarray, np.ndarray]:
        """(positions, a!) arrays of shape (n,)*k for expanding order-k partials."""
        if k not in self._dense_maps:
            shape = (self.n,) * k
            positions = np.empty(shape, dtype=int)
            for full in itertools.product(range(self.n), repeat=k):
                positions[full] = self.lookup[tuple(sorted(full))]
            self._dense_maps[k] = (positions, self.factorials[positions])
        return self._dense_maps[k]


@lru_cache(maxsize=None)
def monomial_basis(n: int, order: int) -> MonomialBasis:
    return MonomialBasis(n, order)


class TaylorJet:
    """Immutable truncated Taylor polynomial around a point."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: MonomialBasis, coeffs: np.ndarray):
        coeffs = np.asarray(coeffs, dtype=float)
        coeffs.setflags(write=False)
        self.basis = basis
        self.coeffs = coeffs

    # ─── constructors ──────────────────────────────────────────────────────

    @classmethod
    def constant(cls, basis: MonomialBasis, value: float) -> "TaylorJet":
        coeffs = np.zeros(basis.size)
        coeffs[0] = value
        return cls(basis, coeffs)

    @classmethod
    def variable(cls, basis: MonomialBasis, i: int, value: float) -> "TaylorJet":
        coeffs = np.zeros(basis.size)
        coeffs[0] = value
        if basis.order >= 1:
            coeffs[basis.lookup[(i,)]] = 1.0
        return cls(basis, coeffs)

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    # ─── ring operations ───────────────────────────────────────────────────

    def _lift(self, other: "TaylorJet | float") -> "TaylorJet":
        if isinstance(other, TaylorJet):
            return other
        return TaylorJet.constant(self.basis, float(other))

    def __add__(self, other: "TaylorJet | float") -> "TaylorJet":
        return TaylorJet(self.basis, self.coeffs + self._lift(other).coeffs)

    __radd__ = __add__

    def __sub__(self, other: "TaylorJet | float") -> "TaylorJet":
        return TaylorJet(self.basis, self.coeffs - self._lift(other).coeffs)

    def __rsub__(self, other: "TaylorJet | float") -> "TaylorJet":
        return TaylorJet(self.basis, self._lift(other).coeffs - self.coeffs)

    def __neg__(self) -> "TaylorJet":
        return TaylorJet(self.basis, -self.coeffs)

    def __mul__(self, other: "TaylorJet | float") -> "TaylorJet":
        if not isinstance(other, TaylorJet):
            return TaylorJet(self.basis, self.coeffs * float(other))
        b = self.basis
        weights = self.coeffs[b.mul_left] * other.coeffs[b.mul_right]
        return TaylorJet(b, np.bincount(b.mul_target, weights=weights, minlength=b.size))

    __rmul__ = __mul__

    def __truediv__(self, other: "TaylorJet | float") -> "TaylorJet":
        if not isinstance(other, TaylorJet):
            return TaylorJet(self.basis, self.coeffs / float(other))
        return self * other.reciprocal()

    def __pow__(self, exponent: int) -> "TaylorJet":
        return self.power(exponent)

    # ─── elementary functions ──────────────────────────────────────────────

    def compose(self, derivatives: Sequence[float]) -> "TaylorJet":
        """
        g(self) for a univariate g given by g^(k)(a0), k = 0..order.
        Horner in the nilpotent part h = self - a0.
        """
        order = self.basis.order
        h_coeffs = self.coeffs.copy()
        h_coeffs[0] = 0.0
        h = TaylorJet(self.basis, h_coeffs)
        result = TaylorJet.constant(self.basis, derivatives[order] / math.factorial(order))
        for k in range(order - 1, -1, -1):
            result = result * h + derivatives[k] / math.factorial(k)
        return result

    def reciprocal(self) -> "TaylorJet":
        a0 = self.value
        return self.compose(
            [(-1) ** k * math.factorial(k) / a0 ** (k + 1) for k in range(self.basis.order + 1)]
        )

    def log(self) -> "TaylorJet":
        a0 = self.value
        derivs = [math.log(a0)] + [
            (-1) ** (k - 1) * math.factorial(k - 1) / a0**k for k in range(1, self.basis.order + 1)
        ]
        return self.compose(derivs)

    def exp(self) -> "TaylorJet":
        e0 = math.exp(self.value)
        return self.compose([e0] * (self.basis.order + 1))

    def power(self, exponent: int) -> "TaylorJet":
        if exponent < 0:
            return self.reciprocal().power(-exponent)
        result = TaylorJet.constant(self.basis, 1.0)
        base = self
        # binary exponentiation keeps polynomials exact
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result


