"""Exact invariants and classification of fat-point linear systems on generic K3 surfaces."""

from .lattice import (
    ConeError,
    DivisorClass,
    SurfaceMismatchError,
    SurfaceParams,
    add,
    arithmetic_genus,
    canonical_class,
    canonical_degree,
    euler_characteristic,
    exceptional,
    expected_dimension,
    h2,
    hyperplane,
    intersect,
    scale,
    self_intersection,
    virtual_dimension,
    zero,
)

__version__ = "0.1.0"

__all__ = [
    "ConeError",
    "DivisorClass",
    "SurfaceMismatchError",
    "SurfaceParams",
    "add",
    "arithmetic_genus",
    "canonical_class",
    "canonical_degree",
    "euler_characteristic",
    "exceptional",
    "expected_dimension",
    "h2",
    "hyperplane",
    "intersect",
    "scale",
    "self_intersection",
    "virtual_dimension",
    "zero",
    "__version__",
]
