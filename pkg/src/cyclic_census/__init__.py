"""Cyclic and maximal cyclic subgroup counts of finite groups, with exhaustive checks."""

from .groups import ElementSet, Group, build, direct_product
from .grammar import parse
from .invariants import c_count, lambda_count

__all__ = ["ElementSet", "Group", "build", "c_count", "direct_product", "lambda_count", "parse"]
__version__ = "0.1.0"
