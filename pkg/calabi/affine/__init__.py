from calabi.affine.action import EquivalenceReport, act_on_function, check_equivalence_invariants
from calabi.affine.group import AffineMap

__all__ = ["AffineMap", "EquivalenceReport", "act_on_function", "check_equivalence_invariants"]
