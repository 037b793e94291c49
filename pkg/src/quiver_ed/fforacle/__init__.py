"""Finite-field brute-force oracle."""

from .kernels import HAS_NUMBA, backend_name, end_dims_range, rep_space_exponent
from .oracle import (
    BrickSearch,
    DecompositionSample,
    EndStats,
    FiniteFieldRep,
    brick_witness,
    count_iso_classes,
    decode_rep,
    direct_sum,
    end_dimension,
    hom_basis,
    make_rep,
    random_rep,
    sampled_generic_decomposition,
)

__all__ = [
    "HAS_NUMBA",
    "backend_name",
    "end_dims_range",
    "rep_space_exponent",
    "BrickSearch",
    "DecompositionSample",
    "EndStats",
    "FiniteFieldRep",
    "brick_witness",
    "count_iso_classes",
    "decode_rep",
    "direct_sum",
    "end_dimension",
    "hom_basis",
    "make_rep",
    "random_rep",
    "sampled_generic_decomposition",
]
