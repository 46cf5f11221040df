"""Computations around progression-free sets in abelian 2-groups."""

from .groups import GroupSpec, class_key, is_progression, square

__version__ = "0.1.0"

__all__ = ["GroupSpec", "class_key", "is_progression", "square", "__version__"]
