from .bundles import (
    SPLIT_SIGN,
    ConsistencyReport,
    Filtration,
    ToricVectorBundle,
    chern_number,
    elementary_symmetric,
    eps_lambda,
    picard_degree_check,
    resolve_klyachko,
    split_bundle,
    validate_partition,
)
from .mixed_volume import (
    FitResult,
    MixedVolumeReport,
    PolytopeSystem,
    lattice_point_polynomial,
    mixed_volume,
    mixed_volume_fit,
    mixed_volume_lattice_points,
    mixed_volume_loc,
)

__all__ = [
    "SPLIT_SIGN",
    "ConsistencyReport",
    "Filtration",
    "FitResult",
    "MixedVolumeReport",
    "PolytopeSystem",
    "ToricVectorBundle",
    "chern_number",
    "elementary_symmetric",
    "eps_lambda",
    "lattice_point_polynomial",
    "mixed_volume",
    "mixed_volume_fit",
    "mixed_volume_lattice_points",
    "mixed_volume_loc",
    "picard_degree_check",
    "resolve_klyachko",
    "split_bundle",
    "validate_partition",
]
