"""Acceptance tests and shared oracles."""
