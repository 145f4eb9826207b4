"""Substitution tensors on nominal sets, renaming sets and presheaves, checked at finite stages."""

__version__ = "0.1.0"
