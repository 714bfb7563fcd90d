"""
calabi/jets/jet.py

Jet4: value and every partial derivative of f up to order 4 at a point, computed
by propagating truncated Taylor arithmetic through the expression tree.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np

from calabi.consts import MAX_JET_ORDER
from calabi.errors import DimensionError, DomainViolationError
from calabi.jets.expr import BinOp, Call, Compose, Const, Expr, Neg, Pow, Var, to_text
from calabi.jets.spec import FunctionSpec
from calabi.jets.taylor import MonomialBasis, TaylorJet, monomial_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Jet4:
    dim: int
    order: int
    point: Tuple[float, ...]
    coeffs: np.ndarray = field(repr=False, compare=False)
    basis: MonomialBasis = field(repr=False, compare=False)

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    def partial(self, *indices: int) -> float:
        """f_{i1...ik} with 0-based indices in any order."""
        if len(indices) > self.order:
            raise ValueError(f"jet has order {self.order}, asked for {len(indices)}")
        pos = self.basis.position(indices)
        return float(self.coeffs[pos] * self.basis.factorials[pos])

    def tensor(self, k: int) -> np.ndarray:
        """Dense symmetric array of all order-k partials."""
        if k > self.order:
            raise ValueError(f"jet has order {self.order}, asked for {k}")
        if k == 0:
            return np.array(self.value)
        return self._dense[k]

    def gradient(self) -> np.ndarray:
        return self.tensor(1)

    def hessian(self) -> np.ndarray:
        return self.tensor(2)

    @cached_property
    def _dense(self) -> dict[int, np.ndarray]:
        out = {}
        for k in range(1, self.order + 1):
            positions, factorials = self.basis.dense_map(k)
            dense = self.coeffs[positions] * factorials
            dense.setflags(write=False)
            out[k] = dense
        return out


# ─────────────────────────────────────────────────────────────────────────────
# Evaluation
# ─────────────────────────────────────────────────────────────────────────────


def _guard(result: TaylorJet, node: Expr) -> TaylorJet:
    if not np.all(np.isfinite(result.coeffs)):
        raise DomainViolationError(to_text(node), result.value, "non-finite value")
    return result


def _evaluate(expr: Expr, seeds: Sequence[TaylorJet], basis: MonomialBasis) -> TaylorJet:
    match expr:
        case Const(value=value):
            return TaylorJet.constant(basis, float(value))
        case Var(index=index):
            return seeds[index - 1]
        case Neg(operand=operand):
            return -_evaluate(operand, seeds, basis)
        case BinOp(op=op, left=left, right=right):
            a = _evaluate(left, seeds, basis)
            b = _evaluate(right, seeds, basis)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            if b.value == 0.0:
                raise DomainViolationError(to_text(right), b.value, "division by zero")
            return _guard(a / b, expr)
        case Pow(base=base_expr, exponent=exponent):
            base = _evaluate(base_expr, seeds, basis)
            if exponent < 0 and base.value == 0.0:
                raise DomainViolationError(to_text(base_expr), base.value, "negative power of zero")
            return _guard(base.power(exponent), expr)
        case Call(func="ln", arg=arg_expr):
            arg = _evaluate(arg_expr, seeds, basis)
            if arg.value <= 0.0:
                raise DomainViolationError(to_text(arg_expr), arg.value, "ln of non-positive value")
            return arg.log()
        case Call(func="exp", arg=arg_expr):
            return _guard(_evaluate(arg_expr, seeds, basis).exp(), expr)
        case Compose(inner=inner, linear=linear, offset=offset):
            inner_seeds: List[TaylorJet] = []
            for row, shift in zip(linear, offset):
                seed = TaylorJet.constant(basis, shift)
                for weight, outer in zip(row, seeds):
                    if weight != 0.0:
                        seed = seed + outer * weight
                inner_seeds.append(seed)
            return _evaluate(inner, inner_seeds, basis)
    raise TypeError(f"unknown node {expr!r}")


def eval_jet(f: FunctionSpec, x: Sequence[float], order: int = MAX_JET_ORDER) -> Jet4:
    """
    All partials of f up to `order` at x, exact to machine precision.

    Raises:
        DomainViolationError: x is outside the domain of some ln / division node.
    """
    if not 0 <= order <= MAX_JET_ORDER:
        raise ValueError(f"jet order must be in 0..{MAX_JET_ORDER}, got {order}")
    point = tuple(float(v) for v in x)
    if len(point) != f.dim:
        raise DimensionError(f"point has {len(point)} coordinates, function has dim={f.dim}")
    if not all(math.isfinite(v) for v in point):
        raise DomainViolationError(f.label, float("nan"), "non-finite point")

    basis = monomial_basis(f.dim, order)
    seeds = [TaylorJet.variable(basis, i, point[i]) for i in range(f.dim)]
    result = _evaluate(f.expr, seeds, basis)
    return Jet4(dim=f.dim, order=order, point=point, coeffs=result.coeffs, basis=basis)


def evaluate(f: FunctionSpec, x: Sequence[float]) -> float:
    return eval_jet(f, x, order=0).value
