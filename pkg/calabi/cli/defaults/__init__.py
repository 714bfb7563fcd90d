from calabi.cli.defaults.verifier import VerifierConfig

__all__ = ["VerifierConfig"]
