from calabi.jets.jet import Jet4, eval_jet, evaluate
from calabi.jets.parser import parse, parse_expression
from calabi.jets.spec import FunctionSpec

__all__ = ["FunctionSpec", "Jet4", "eval_jet", "evaluate", "parse", "parse_expression"]
