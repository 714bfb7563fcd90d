"""
calabi/errors.py

Exception hierarchy shared by every module.
Input errors also subclass ValueError so builtin-style callers keep working.
"""

from __future__ import annotations

from typing import Optional, Sequence


class CalabiError(Exception):
    """Base class for all library errors."""


# ─────────────────────────────────────────────────────────────────────────────
# 1. INPUT ERRORS (bad specs, bad parameters)
# ─────────────────────────────────────────────────────────────────────────────


class DslSyntaxError(CalabiError, ValueError):
    """Malformed function-spec text. `position` is the 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at offset {position}")


class UnknownIdentifierError(DslSyntaxError):
    def __init__(self, name: str, position: int, text: str = ""):
        self.name = name
        super().__init__(f"unknown identifier '{name}'", position, text)


class DimensionError(CalabiError, ValueError):
    """Dimension is zero, exceeds the supported maximum, or disagrees with the data."""


class InvalidParametersError(CalabiError, ValueError):
    """Catalog, reconstruction or affine-map parameters outside their valid range."""


class SingularMapError(CalabiError, ValueError):
    def __init__(self, determinant: float):
        self.determinant = determinant
        super().__init__(f"linear block is singular (det = {determinant:.3e})")


# ─────────────────────────────────────────────────────────────────────────────
# 2. EVALUATION ERRORS (point outside the domain)
# ─────────────────────────────────────────────────────────────────────────────


class DomainViolationError(CalabiError, ArithmeticError):
    """An ln / division / negative power was evaluated outside its domain."""

    def __init__(self, subexpression: str, value: float, reason: str):
        self.subexpression = subexpression
        self.value = value
        self.reason = reason
        super().__init__(f"{reason}: '{subexpression}' evaluates to {value!r}")


class NotPositiveDefiniteError(CalabiError, ArithmeticError):
    """Hessian is not positive definite: the point is outside the convexity domain."""

    def __init__(self, min_eigenvalue: float):
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"Hessian is not positive definite (smallest eigenvalue {min_eigenvalue:.3e})"
        )


# ─────────────────────────────────────────────────────────────────────────────
# 3. ALGORITHM ERRORS
# ─────────────────────────────────────────────────────────────────────────────


class CommutatorViolationError(CalabiError, ValueError):
    def __init__(self, pair: tuple[int, int], defect: float):
        self.pair = pair
        self.defect = defect
        super().__init__(
            f"matrices {pair[0]} and {pair[1]} do not commute (relative defect {defect:.3e})"
        )


class ConvergenceError(CalabiError, RuntimeError):
    def __init__(self, message: str, residual: float, candidate: Optional[Sequence[float]] = None):
        self.residual = residual
        self.candidate = None if candidate is None else list(candidate)
        super().__init__(f"{message} (residual {residual:.3e})")


class PatternMismatchError(CalabiError, ValueError):
    """Spectrum fits none of the cases C0..Cn."""

    def __init__(self, spectrum: Sequence[float], tol: float):
        self.spectrum = list(spectrum)
        self.tol = tol
        super().__init__(
            f"spectrum {[round(m, 12) for m in spectrum]} fits no case at tol={tol:g}"
        )


class StepCountError(CalabiError, ValueError):
    def __init__(self, steps: int, error_estimate: float, tol: float = 1e-6):
        self.steps = steps
        self.error_estimate = error_estimate
        super().__init__(
            f"{steps} steps too few: error estimate {error_estimate:.3e} exceeds {tol:.0e}"
        )
