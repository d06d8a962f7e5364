"""Level matrices of rooted trees: construction, exact and numerical spectral
data, eigenvalue bounds, and exhaustive verification at small orders."""

from .bounds import (
    BoundReport,
    SpectralData,
    evaluate_checks,
    leafstar_cubic_roots,
    path_rho_closed_form,
)
from .levelmatrix import (
    LevelMatrix,
    build_level_matrix,
    distance_matrix,
    h_value,
    level_index,
    matrix_text,
    row_sum_difference,
    row_sums,
    second_order_row_sums,
)
from .spectra import (
    CharPoly,
    Spectrum,
    characteristic_polynomial,
    charpoly_roots,
    clustered_multiplicity,
    exact_zero_multiplicity,
    level_energy,
    perron_vector,
    symmetric_eigenvalues,
)
from .trees import (
    RootedTree,
    canonical_level_sequence,
    canonicalize,
    complete_dary,
    delete_leaf,
    enumerate_rooted_trees,
    format_tree,
    from_parent_list,
    is_rooted_path,
    is_rooted_star,
    levels,
    parse_tree,
    rooted_path,
    rooted_star,
    rooted_tree_count,
    star_rooted_at_leaf,
    to_dot,
)
from .verify import (
    ExtremalSweep,
    VerificationLedger,
    extremal_sweep,
    verify_extremal_energy,
    verify_extremal_rho,
    verify_interlacing,
    verify_multiplicity_theorems,
    verify_order,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CharPoly",
    "ExtremalSweep",
    "LevelMatrix",
    "RootedTree",
    "SpectralData",
    "Spectrum",
    "VerificationLedger",
    "build_level_matrix",
    "canonical_level_sequence",
    "canonicalize",
    "characteristic_polynomial",
    "charpoly_roots",
    "clustered_multiplicity",
    "complete_dary",
    "delete_leaf",
    "distance_matrix",
    "enumerate_rooted_trees",
    "evaluate_checks",
    "exact_zero_multiplicity",
    "extremal_sweep",
    "format_tree",
    "from_parent_list",
    "h_value",
    "is_rooted_path",
    "is_rooted_star",
    "leafstar_cubic_roots",
    "level_energy",
    "level_index",
    "levels",
    "matrix_text",
    "parse_tree",
    "path_rho_closed_form",
    "perron_vector",
    "rooted_path",
    "rooted_star",
    "rooted_tree_count",
    "row_sum_difference",
    "row_sums",
    "second_order_row_sums",
    "star_rooted_at_leaf",
    "symmetric_eigenvalues",
    "to_dot",
    "verify_extremal_energy",
    "verify_extremal_rho",
    "verify_interlacing",
    "verify_multiplicity_theorems",
    "verify_order",
]
