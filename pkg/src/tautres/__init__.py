"""Tautological integrals over Hilbert schemes of points by iterated residues.

Exact (rational, no floating point) evaluation of integrals of tautological
classes over punctual and geometric subsets of Hilbert schemes of points,
including the nodal-curve coefficients a_r and the node-counting numbers N_r.
The pipeline: assemble a rational residue problem from combinatorial data
(Young diagrams, set partitions, filtration weights), evaluate it as an
iterated residue at infinity, and pair the top-degree part against the
surface's intersection numbers.
"""

from .assemble import (
    AlgebraSpec,
    GeometricSubsetSpec,
    SEVERI_CONTOUR_CALIBRATION,
    SEVERI_PRINTED_PREFACTOR,
    assemble_geometric,
    assemble_ghilb,
    assemble_punctual,
    assemble_severi,
    evaluate,
    normalize_phi,
    severi_bundle,
    severi_coefficient,
)
from .chern import (
    BundleModel,
    SURFACE_BASIS,
    SURFACE_PRESETS,
    SurfaceModel,
    TopDegreeSelection,
    elementary_symmetric,
    generic_surface,
    p2_surface,
    pair_integral,
    segre_factor,
    select_top_degree,
    twisted_roots,
)
from .config import (
    ConfigError,
    ProblemConfig,
    build_problem,
    build_surface,
    load_config,
    parse_config,
)
from .diagrams import (
    DiagramND,
    bell_inverse,
    bell_transform,
    curvilinear_sum,
    degree_filtration,
    diagram,
    from_partition,
    lengths,
    merge_partition,
    orient_well,
    parse_diagram,
    set_partitions,
    severi_count,
    sieve_coefficient,
    to_partition,
    weight_map,
)
from .multidegree import (
    MonomialIdeal,
    UNKNOWN,
    balanced_dual_text,
    codimension,
    multidegree,
    nakajima_dual,
)
from .poly import (
    LinearForm,
    MPoly,
    VariableContext,
    format_poly,
    linear_form,
    parse_linear_form,
    parse_poly,
)
from .residue import (
    Expansion,
    ResidueProblem,
    TermBudgetExceeded,
    expand_inverse_at_infinity,
    grassmann_context,
    grassmann_fixed_point_sum,
    grassmann_residue_problem,
    iterated_residue,
)
from .verify import ALL_CRITERIA, CriterionResult, verify_suite

__all__ = [
    "AlgebraSpec",
    "ALL_CRITERIA",
    "BundleModel",
    "ConfigError",
    "CriterionResult",
    "DiagramND",
    "Expansion",
    "GeometricSubsetSpec",
    "LinearForm",
    "MPoly",
    "MonomialIdeal",
    "ProblemConfig",
    "ResidueProblem",
    "SEVERI_CONTOUR_CALIBRATION",
    "SEVERI_PRINTED_PREFACTOR",
    "SURFACE_BASIS",
    "SURFACE_PRESETS",
    "SurfaceModel",
    "TermBudgetExceeded",
    "TopDegreeSelection",
    "UNKNOWN",
    "VariableContext",
    "assemble_geometric",
    "assemble_ghilb",
    "assemble_punctual",
    "assemble_severi",
    "balanced_dual_text",
    "bell_inverse",
    "bell_transform",
    "build_problem",
    "build_surface",
    "codimension",
    "curvilinear_sum",
    "degree_filtration",
    "diagram",
    "elementary_symmetric",
    "evaluate",
    "expand_inverse_at_infinity",
    "format_poly",
    "from_partition",
    "generic_surface",
    "grassmann_context",
    "grassmann_fixed_point_sum",
    "grassmann_residue_problem",
    "iterated_residue",
    "lengths",
    "linear_form",
    "load_config",
    "merge_partition",
    "multidegree",
    "nakajima_dual",
    "normalize_phi",
    "orient_well",
    "p2_surface",
    "pair_integral",
    "parse_config",
    "parse_diagram",
    "parse_linear_form",
    "parse_poly",
    "segre_factor",
    "select_top_degree",
    "set_partitions",
    "severi_bundle",
    "severi_coefficient",
    "severi_count",
    "sieve_coefficient",
    "to_partition",
    "twisted_roots",
    "verify_suite",
    "weight_map",
]
