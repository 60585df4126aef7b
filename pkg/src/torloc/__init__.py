"""Exact equivariant localization on toric fans.

Equivariant multiplicities of cones, the map from piecewise polynomials to
Minkowski weights, Chow rank tables, mixed volumes and Chern numbers of
toric vector bundles, all in exact integer and rational arithmetic.
"""

from .errors import (
    IncompatibleFiltrations,
    InvariantBreach,
    MathematicalIncompatibility,
    NotAFan,
    TorlocError,
    ValidationError,
)
from .polyhedra import Cone, Fan, LatticePolytope, fan_from_maximal_cones

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "Fan",
    "IncompatibleFiltrations",
    "InvariantBreach",
    "LatticePolytope",
    "MathematicalIncompatibility",
    "NotAFan",
    "TorlocError",
    "ValidationError",
    "fan_from_maximal_cones",
]
