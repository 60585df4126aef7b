from .cone import (
    Cone,
    dual_basis,
    dual_cone,
    dual_generators,
    is_unimodular,
    parallelepiped_points,
    pulling_triangulation,
    unimodular_resolve,
)
from .dd import extreme_rays
from .fan import Fan, StarFan, fan_from_maximal_cones, is_complete, star_quotient_fan
from .polytope import (
    LatticePolytope,
    lattice_points,
    min_vertex,
    minkowski_sum,
    minkowski_sum_all,
    normal_fan,
)

__all__ = [
    "Cone",
    "Fan",
    "LatticePolytope",
    "StarFan",
    "dual_basis",
    "dual_cone",
    "dual_generators",
    "extreme_rays",
    "fan_from_maximal_cones",
    "is_complete",
    "is_unimodular",
    "lattice_points",
    "min_vertex",
    "minkowski_sum",
    "minkowski_sum_all",
    "normal_fan",
    "parallelepiped_points",
    "pulling_triangulation",
    "star_quotient_fan",
    "unimodular_resolve",
]
