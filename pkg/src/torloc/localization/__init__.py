from .multiplicity import (
    e_sigma,
    e_sigma_bar,
    e_sigma_principal,
    e_sigma_tau,
    hilbert_series,
    restrict_to_quotient,
    sum_of_multiplicities,
    sum_over_star,
)
from .piecewise import (
    PiecewisePolynomial,
    agreement_matrix,
    m_times_pp_rank,
    pp_basis,
    pp_rank,
    psi_ray,
    psi_tau,
    pushforward_polynomial,
    random_integral_pp,
)
from .weights import (
    ImageReport,
    MinkowskiWeight,
    balancing_matrix,
    iota_star,
    iota_star_image,
    is_balanced,
    picard_rank,
    ranks_table,
    weight_lattice_basis,
    weight_rank,
)

__all__ = [
    "ImageReport",
    "MinkowskiWeight",
    "PiecewisePolynomial",
    "agreement_matrix",
    "balancing_matrix",
    "e_sigma",
    "e_sigma_bar",
    "e_sigma_principal",
    "e_sigma_tau",
    "hilbert_series",
    "iota_star",
    "iota_star_image",
    "is_balanced",
    "m_times_pp_rank",
    "picard_rank",
    "pp_basis",
    "pp_rank",
    "psi_ray",
    "psi_tau",
    "pushforward_polynomial",
    "random_integral_pp",
    "ranks_table",
    "restrict_to_quotient",
    "sum_of_multiplicities",
    "sum_over_star",
    "weight_lattice_basis",
    "weight_rank",
]
