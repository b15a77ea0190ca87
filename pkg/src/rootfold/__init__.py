"""Exact root-system construction, alcove stabilizers, and orbit-average folding."""

from .root_systems import TypeLabel, RootSystem, build

__all__ = ["TypeLabel", "RootSystem", "build"]
__version__ = "0.1.0"
