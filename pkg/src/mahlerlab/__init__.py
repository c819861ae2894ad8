"""Exact rational geometry for volume products and Hanner polytopes."""

from .errors import (
    AmbiguousSectionError,
    ConsistencyError,
    DimensionError,
    FalsificationError,
    FormatError,
    GeometryError,
    InvalidSumError,
    PolarityDomainError,
    PreconditionError,
    ResourceError,
    UnboundedError,
)
from .graphs import (
    Graph,
    complement,
    enumerate_p4_free_classes,
    enumerate_p4_free_labeled,
    enumerate_standard_hanner,
    from_edges,
    graph_from_polytope,
    hanner_from_tree,
    is_dual_01,
    is_p4_free,
    maximal_independent_sets,
    polytope_from_graph,
    tree_graph,
)
from .polytope import (
    Polytope,
    banach_mazur_diag_upper,
    coordinate_projection,
    coordinate_section,
    cross_polytope,
    cube,
    from_halfspaces,
    from_vertices,
    gauge,
    hausdorff_distance_sq,
    interval,
    is_unconditional,
    l1_sum,
    linf_sum,
    membership,
    normalize_unconditional,
    polar,
    volume,
)
from .stability import (
    ExperimentConfig,
    StabilityRecord,
    diagonal_boundary_point,
    glue_graphs,
    nearest_hanner_bruteforce,
    perturb_unconditional,
    reconstruct_hanner,
    stability_experiment,
    symmetric_probe,
)
from .volprod import (
    CornerBoundInstance,
    MeyerReport,
    VolumeProductReport,
    combine_stability_constants,
    corner_bound_factor,
    corner_bound_instance,
    corner_pieces,
    mahler_bound,
    meyer_inequality_check,
    near_minimal_sections_check,
    section_membership_vector,
    truncated_cube,
    verify_truncated_cube_bound,
    volume_product,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousSectionError",
    "ConsistencyError",
    "CornerBoundInstance",
    "DimensionError",
    "ExperimentConfig",
    "FalsificationError",
    "FormatError",
    "GeometryError",
    "Graph",
    "InvalidSumError",
    "MeyerReport",
    "PolarityDomainError",
    "Polytope",
    "PreconditionError",
    "ResourceError",
    "StabilityRecord",
    "UnboundedError",
    "VolumeProductReport",
    "banach_mazur_diag_upper",
    "combine_stability_constants",
    "complement",
    "coordinate_projection",
    "coordinate_section",
    "corner_bound_factor",
    "corner_bound_instance",
    "corner_pieces",
    "cross_polytope",
    "cube",
    "diagonal_boundary_point",
    "enumerate_p4_free_classes",
    "enumerate_p4_free_labeled",
    "enumerate_standard_hanner",
    "from_edges",
    "from_halfspaces",
    "from_vertices",
    "gauge",
    "glue_graphs",
    "graph_from_polytope",
    "hanner_from_tree",
    "hausdorff_distance_sq",
    "interval",
    "is_dual_01",
    "is_p4_free",
    "is_unconditional",
    "l1_sum",
    "linf_sum",
    "mahler_bound",
    "maximal_independent_sets",
    "membership",
    "meyer_inequality_check",
    "near_minimal_sections_check",
    "nearest_hanner_bruteforce",
    "normalize_unconditional",
    "perturb_unconditional",
    "polar",
    "polytope_from_graph",
    "reconstruct_hanner",
    "section_membership_vector",
    "stability_experiment",
    "symmetric_probe",
    "tree_graph",
    "truncated_cube",
    "verify_truncated_cube_bound",
    "volume",
    "volume_product",
]
