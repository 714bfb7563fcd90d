from calabi.tensors.defaults.engine import TensorEngineConfig

__all__ = ["TensorEngineConfig"]
