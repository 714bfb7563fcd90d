from calabi.cli.main import cli

__all__ = ["cli"]
