"""
calabi/catalog/ids.py

Catalog identifiers as used on the command line, and the catalog-or-DSL entry
point for function specs.
"""

from __future__ import annotations

from typing import List, Optional

from pydantic import ValidationError

from calabi.catalog.surfaces import CatalogSurface, LogCone, Paraboloid, QSurface, as_function
from calabi.errors import InvalidParametersError
from calabi.jets.parser import parse
from calabi.jets.spec import FunctionSpec

KINDS = ("paraboloid", "q", "logcone")


def is_catalog_id(text: str) -> bool:
    head, sep, _ = text.strip().partition(":")
    return bool(sep) and head.lower() in KINDS


def _floats(field: str) -> List[float]:
    return [float(part) for part in field.split(",") if part.strip()]


def _build(kind: str, fields: List[str]) -> CatalogSurface:
    if kind == "paraboloid" and len(fields) == 1:
        return Paraboloid(n=int(fields[0]))
    if kind == "q" and len(fields) == 2:
        return QSurface(c=tuple(_floats(fields[0])), n=int(fields[1]))
    if kind == "logcone" and len(fields) == 1:
        return LogCone(c=float(fields[0]))
    raise InvalidParametersError(
        "malformed catalog id: expected paraboloid:n, q:c1,...,cr:n or logcone:c"
    )


def parse_catalog_id(text: str) -> CatalogSurface:
    """
    Raises:
        InvalidParametersError: unknown kind, malformed fields or parameters out of range.
    """
    kind, _, rest = text.strip().partition(":")
    kind = kind.lower()
    if kind not in KINDS:
        raise InvalidParametersError(f"unknown catalog surface '{kind}'")
    try:
        return _build(kind, rest.split(":"))
    except InvalidParametersError:
        raise
    except (ValidationError, ValueError) as exc:
        raise InvalidParametersError(f"invalid parameters in '{text}': {exc}") from exc


def parse_surface(text: str, dim: Optional[int] = None) -> FunctionSpec:
    """Catalog id or DSL expression to a FunctionSpec."""
    if is_catalog_id(text):
        return as_function(parse_catalog_id(text))
    return parse(text, dim=dim)
