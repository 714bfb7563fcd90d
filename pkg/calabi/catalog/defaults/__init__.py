from calabi.catalog.defaults.catalog import DEFAULT_SURFACES, CatalogConfig

__all__ = ["CatalogConfig", "DEFAULT_SURFACES"]
