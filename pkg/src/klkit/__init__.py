"""Exact Kazhdan-Lusztig, Delorme and Ext computations for Weyl groups and path algebras."""

from .coxeter import CoxeterSystem, CoxeterType, GroupElement, build_system
from .poly import IntPoly, LaurentPoly

__all__ = ["CoxeterSystem", "CoxeterType", "GroupElement", "IntPoly", "LaurentPoly",
           "build_system"]
__version__ = "0.1.0"
