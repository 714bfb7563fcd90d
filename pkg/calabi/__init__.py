"""Calabi hypersurface invariants: jets, tensors, normal forms and the classified catalog."""

from calabi.consts import TOOL_VERSION

__version__ = TOOL_VERSION
