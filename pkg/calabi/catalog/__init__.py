from calabi.catalog.ids import is_catalog_id, parse_catalog_id, parse_surface
from calabi.catalog.logcone import (expected_pullback, graph_residual, logcone_jacobian,
                                    logcone_param, pullback_metric)
from calabi.catalog.sampling import sample_points
from calabi.catalog.surfaces import (CatalogSurface, ExpectedInvariants, LogCone, Paraboloid,
                                     QSurface, as_function, catalog_id, expected_invariants)

__all__ = [
    "CatalogSurface",
    "ExpectedInvariants",
    "LogCone",
    "Paraboloid",
    "QSurface",
    "as_function",
    "catalog_id",
    "expected_invariants",
    "expected_pullback",
    "graph_residual",
    "is_catalog_id",
    "logcone_jacobian",
    "logcone_param",
    "parse_catalog_id",
    "parse_surface",
    "pullback_metric",
    "sample_points",
]
