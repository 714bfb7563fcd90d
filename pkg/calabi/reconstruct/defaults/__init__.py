from calabi.reconstruct.defaults.reconstruct import ReconstructConfig

__all__ = ["ReconstructConfig"]
