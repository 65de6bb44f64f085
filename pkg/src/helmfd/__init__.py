"""Compact high-order finite differences for 2D Helmholtz problems.

Sixth-order 9-point interior schemes with reduced pollution for constant
wavenumber, 6-point side and 4-point corner schemes for Neumann/impedance
boundaries, and interface-aware irregular-point schemes (seventh order for
equal wavenumbers, fifth order for piecewise-constant ones) on uniform
Cartesian grids over rectangles.
"""

from .indexing import MultiIndexSet, lambda_set
from .kernels import g_kernel, h_kernel
from .reduction import ReductionFunctional, reduce_derivative
from .stencils import (
    FreeParams,
    RhsWeightTable,
    StencilWeights,
    boundary_rhs,
    boundary_stencil,
    corner_rhs,
    corner_stencil,
    interior_family,
    interior_reduced,
    interior_rhs,
)

__all__ = [
    "MultiIndexSet",
    "lambda_set",
    "g_kernel",
    "h_kernel",
    "ReductionFunctional",
    "reduce_derivative",
    "FreeParams",
    "RhsWeightTable",
    "StencilWeights",
    "boundary_rhs",
    "boundary_stencil",
    "corner_rhs",
    "corner_stencil",
    "interior_family",
    "interior_reduced",
    "interior_rhs",
]
