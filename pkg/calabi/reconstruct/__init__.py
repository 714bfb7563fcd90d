from calabi.reconstruct.flat import (DiagonalCubic, FramePath, closed_form, diagonal_form,
                                     equivalence_to_catalog, flat_data_from_cubic,
                                     graph_equivalence_defect, graph_height, integrate_frames,
                                     recovered_function, recovered_surface, solve_rays)
from calabi.reconstruct.hyperbolic import HyperbolicPath, integrate_hyperbolic
from calabi.reconstruct.schemas import FlatParallelData

__all__ = [
    "DiagonalCubic",
    "FlatParallelData",
    "FramePath",
    "HyperbolicPath",
    "closed_form",
    "diagonal_form",
    "equivalence_to_catalog",
    "flat_data_from_cubic",
    "graph_equivalence_defect",
    "graph_height",
    "integrate_frames",
    "integrate_hyperbolic",
    "recovered_function",
    "recovered_surface",
    "solve_rays",
]
