"""Finite-dimensional quotients of path algebras and their homological invariants."""

from .algebra import (AlgebraPresentation, Arrow, BasedAlgebra, NotFiniteDimensional, Path,
                      PresentationError, build_algebra, preset)
from .conjectures import DkSolution, check_conjectures, solve_dk
from .modules import (FDModule, bar_module, direct_sum, end_algebra, end_dimensions, projective,
                      simple, std_quotient, trace_ideal)
from .resolution import (ProjResolution, ResolutionTruncated, derived_order, ext_series,
                         minimal_resolution, projective_dimension)

__all__ = [
    "AlgebraPresentation", "Arrow", "BasedAlgebra", "DkSolution", "FDModule",
    "NotFiniteDimensional", "Path", "PresentationError", "ProjResolution", "ResolutionTruncated",
    "bar_module", "build_algebra", "check_conjectures", "derived_order", "direct_sum",
    "end_algebra", "end_dimensions", "ext_series", "minimal_resolution", "preset", "projective",
    "projective_dimension", "simple", "solve_dk", "std_quotient", "trace_ideal",
]
