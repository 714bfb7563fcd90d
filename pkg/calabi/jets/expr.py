"""
calabi/jets/expr.py

Expression tree for strictly convex functions f(x_1, ..., x_n).
Nodes are immutable; variables are 1-based like the DSL (x1 ... xn).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Literal, Tuple, Union

BinaryOp = Literal["+", "-", "*", "/"]
FuncName = Literal["ln", "exp"]

# Binding strength used when rendering text
_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


class Node:
    """Operator sugar so catalog code can build trees as ordinary arithmetic."""

    def __add__(self, other: NodeLike) -> "BinOp":
        return BinOp("+", self, as_node(other))

    def __radd__(self, other: NodeLike) -> "BinOp":
        return BinOp("+", as_node(other), self)

    def __sub__(self, other: NodeLike) -> "BinOp":
        return BinOp("-", self, as_node(other))

    def __rsub__(self, other: NodeLike) -> "BinOp":
        return BinOp("-", as_node(other), self)

    def __mul__(self, other: NodeLike) -> "BinOp":
        return BinOp("*", self, as_node(other))

    def __rmul__(self, other: NodeLike) -> "BinOp":
        return BinOp("*", as_node(other), self)

    def __truediv__(self, other: NodeLike) -> "BinOp":
        return BinOp("/", self, as_node(other))

    def __rtruediv__(self, other: NodeLike) -> "BinOp":
        return BinOp("/", as_node(other), self)

    def __neg__(self) -> "Neg":
        return Neg(self)

    def __pow__(self, exponent: int) -> "Pow":
        return Pow(self, int(exponent))

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, eq=True)
class Const(Node):
    value: Fraction


@dataclass(frozen=True, eq=True)
class Var(Node):
    index: int


@dataclass(frozen=True, eq=True)
class Neg(Node):
    operand: "Expr"


@dataclass(frozen=True, eq=True)
class BinOp(Node):
    op: BinaryOp
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, eq=True)
class Pow(Node):
    base: "Expr"
    exponent: int


@dataclass(frozen=True, eq=True)
class Call(Node):
    func: FuncName
    arg: "Expr"


@dataclass(frozen=True, eq=True)
class Compose(Node):
    """
    `inner` evaluated at x = linear @ y + offset.
    Only built by affine_group; the parser never emits it.
    """

    inner: "Expr"
    linear: Tuple[Tuple[float, ...], ...]
    offset: Tuple[float, ...]

    @property
    def outer_dim(self) -> int:
        return len(self.linear[0]) if self.linear else 0


Expr = Union[Const, Var, Neg, BinOp, Pow, Call, Compose]
NodeLike = Union[Expr, int, float, Fraction]


# ─────────────────────────────────────────────────────────────────────────────
# Constructors
# ─────────────────────────────────────────────────────────────────────────────


def const(value: Union[int, float, Fraction, str]) -> Const:
    if isinstance(value, str):
        return Const(Fraction(value))
    return Const(Fraction(value))


def var(index: int) -> Var:
    return Var(int(index))


def ln(arg: NodeLike) -> Call:
    return Call("ln", as_node(arg))


def exp(arg: NodeLike) -> Call:
    return Call("exp", as_node(arg))


def as_node(value: NodeLike) -> Expr:
    if isinstance(value, Node):
        return value  # type: ignore[return-value]
    if isinstance(value, (Real, Fraction)):
        return const(value)  # type: ignore[arg-type]
    raise TypeError(f"cannot use {type(value).__name__} as an expression")


def total(terms: list[Expr]) -> Expr:
    """Left-folded sum; the empty sum is 0."""
    if not terms:
        return const(0)
    out = terms[0]
    for term in terms[1:]:
        out = BinOp("+", out, term)
    return out


# ─────────────────────────────────────────────────────────────────────────────
# Inspection
# ─────────────────────────────────────────────────────────────────────────────


def max_index(expr: Expr) -> int:
    """Largest variable index the expression reads (its minimal dimension)."""
    if isinstance(expr, Const):
        return 0
    if isinstance(expr, Var):
        return expr.index
    if isinstance(expr, Neg):
        return max_index(expr.operand)
    if isinstance(expr, BinOp):
        return max(max_index(expr.left), max_index(expr.right))
    if isinstance(expr, Pow):
        return max_index(expr.base)
    if isinstance(expr, Call):
        return max_index(expr.arg)
    if isinstance(expr, Compose):
        return expr.outer_dim
    raise TypeError(f"unknown node {expr!r}")


def _format_constant(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    if value.denominator <= 10**6:
        return f"{value.numerator}/{value.denominator}"
    return repr(float(value))


def to_text(expr: Expr, parent_precedence: int = 0) -> str:
    """Render back to DSL text (parenthesized only where needed)."""
    if isinstance(expr, Const):
        text = _format_constant(expr.value)
        if expr.value < 0 or (expr.value.denominator != 1 and parent_precedence >= 2):
            return f"({text})"
        return text
    if isinstance(expr, Var):
        return f"x{expr.index}"
    if isinstance(expr, Neg):
        # unary minus binds looser than ^ and tighter than * and /
        text = f"-{to_text(expr.operand, 3)}"
        return f"({text})" if parent_precedence >= 4 else text
    if isinstance(expr, BinOp):
        prec = _PRECEDENCE[expr.op]
        # right operand of - and / binds tighter
        right_prec = prec + 1 if expr.op in ("-", "/") else prec
        text = f"{to_text(expr.left, prec)}{expr.op}{to_text(expr.right, right_prec)}"
        return f"({text})" if prec < parent_precedence else text
    if isinstance(expr, Pow):
        return f"{to_text(expr.base, 4)}^{expr.exponent}"
    if isinstance(expr, Call):
        return f"{expr.func}({to_text(expr.arg)})"
    if isinstance(expr, Compose):
        return f"[{to_text(expr.inner)}](affine {len(expr.linear)}x{expr.outer_dim})"
    raise TypeError(f"unknown node {expr!r}")
