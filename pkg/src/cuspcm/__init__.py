"""Cohen-Macaulay modules over degenerate cusps and T_pq curve singularities.

The package classifies and enumerates the indecomposable maximal
Cohen-Macaulay modules over these singularities through the combinatorics
of degree sequences on a cycle of projective lines, checks the closed-form
cohomology counts against an exact linear-algebra oracle, and lays out the
Auslander-Reiten quivers tube by tube.
"""

from .cohomology import (
    BundleTriple,
    CohomReport,
    CuspGeometry,
    KahnViolation,
    Scalar,
    cohom_dims,
    delta,
    kahn_condition,
    module_rank,
    n_global,
    positive_parts,
    theta,
    twist_by_cycle,
)
from .cusp import (
    CMModuleLabel,
    FamilyDescriptor,
    GrowthTable,
    LambdaBase,
    RankSlice,
    classify_label,
    enumerate_rank,
    family_counts,
    free_label,
    validate_cusp,
)
from .oracle import (
    GridReport,
    OracleSpace,
    VerifyReport,
    build_presentation,
    oracle_dims,
    rank_of_h,
    verify_formula,
    verify_grid,
)
from .quiver import (
    ARQuiver,
    ARSequence,
    ArrowMultiplicity,
    QuiverArrow,
    QuiverNode,
    Tube,
    ar_sequence,
    arrow_multiplicity,
    build_tube,
    cusp_quiver,
    export_dot,
    quiver_to_dict,
    tpq_quiver,
)
from .sequences import (
    SSeq,
    canonical_form,
    enumerate_canonical,
    is_aperiodic,
    shift_by,
)
from .tpq import (
    TpqCase,
    TpqGeometry,
    TpqKind,
    TpqModuleLabel,
    apply_sigma,
    descend,
    geometry_of,
    is_sigma_symmetric,
    sigma_of_module,
    tpq_iso,
)

__version__ = "0.1.0"

__all__ = [
    "SSeq",
    "shift_by",
    "is_aperiodic",
    "canonical_form",
    "enumerate_canonical",
    "Scalar",
    "KahnViolation",
    "BundleTriple",
    "CuspGeometry",
    "CohomReport",
    "positive_parts",
    "theta",
    "delta",
    "cohom_dims",
    "kahn_condition",
    "twist_by_cycle",
    "n_global",
    "module_rank",
    "OracleSpace",
    "build_presentation",
    "rank_of_h",
    "oracle_dims",
    "VerifyReport",
    "verify_formula",
    "GridReport",
    "verify_grid",
    "LambdaBase",
    "CMModuleLabel",
    "FamilyDescriptor",
    "RankSlice",
    "GrowthTable",
    "validate_cusp",
    "free_label",
    "classify_label",
    "enumerate_rank",
    "family_counts",
    "TpqCase",
    "TpqGeometry",
    "TpqKind",
    "TpqModuleLabel",
    "geometry_of",
    "apply_sigma",
    "is_sigma_symmetric",
    "sigma_of_module",
    "descend",
    "tpq_iso",
    "QuiverNode",
    "QuiverArrow",
    "Tube",
    "ARQuiver",
    "ARSequence",
    "ar_sequence",
    "build_tube",
    "cusp_quiver",
    "tpq_quiver",
    "ArrowMultiplicity",
    "arrow_multiplicity",
    "export_dot",
    "quiver_to_dict",
    "__version__",
]
