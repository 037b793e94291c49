"""Exact invariants of quiver representations and essential dimension
bounds, with a finite-field brute-force oracle for validation."""

from .canonical import (
    CanonicalDecomposition,
    GenericHomExt,
    canonical_decomposition,
    generic_hom_ext,
    is_schur_root,
    schur_family,
)
from .classify import (
    ComponentType,
    RepTypeResult,
    SubquiverWitness,
    find_witness_subquiver,
    rep_type,
)
from .errors import QuiverEdError, ResourceLimitError
from .essdim import (
    EdReport,
    GenericityVerdict,
    ged_root,
    ged_schur_root,
    genericity_all_alpha,
    genericity_counterexample,
    genericity_for,
    kronecker_ed,
    kronecker_split_penalty,
    loop_ed_bounds,
    prime_tower_max,
    prime_tower_sum,
    star_ed,
    star_ged,
)
from .quiver import (
    Quiver,
    build_quiver,
    euler_form,
    gram_matrix,
    kronecker_quiver,
    loop_quiver,
    looped_pair_quiver,
    second_case_quiver,
    star_quiver,
    symmetrized_form,
)
from .roots import (
    RootClassification,
    classify_root,
    enumerate_roots,
    find_real_root_dominating,
    in_fundamental_region,
    iterate_real_roots,
    null_root,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalDecomposition",
    "GenericHomExt",
    "canonical_decomposition",
    "generic_hom_ext",
    "is_schur_root",
    "schur_family",
    "ComponentType",
    "RepTypeResult",
    "SubquiverWitness",
    "find_witness_subquiver",
    "rep_type",
    "QuiverEdError",
    "ResourceLimitError",
    "EdReport",
    "GenericityVerdict",
    "ged_root",
    "ged_schur_root",
    "genericity_all_alpha",
    "genericity_counterexample",
    "genericity_for",
    "kronecker_ed",
    "kronecker_split_penalty",
    "loop_ed_bounds",
    "prime_tower_max",
    "prime_tower_sum",
    "star_ed",
    "star_ged",
    "Quiver",
    "build_quiver",
    "euler_form",
    "gram_matrix",
    "kronecker_quiver",
    "loop_quiver",
    "looped_pair_quiver",
    "second_case_quiver",
    "star_quiver",
    "symmetrized_form",
    "RootClassification",
    "classify_root",
    "enumerate_roots",
    "find_real_root_dominating",
    "in_fundamental_region",
    "iterate_real_roots",
    "null_root",
    "__version__",
]
