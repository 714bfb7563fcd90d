from calabi.diag.defaults.commute import CommuteDiagConfig

__all__ = ["CommuteDiagConfig"]
