from calabi.diag.commute import Diagonalization, SymFamily, simultaneous_diagonalize

__all__ = ["Diagonalization", "SymFamily", "simultaneous_diagonalize"]
