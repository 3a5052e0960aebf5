"""Exact Kauffman-bracket recoupling engine with connectivity certificates."""

from .scalars import (
    GENERIC,
    RingSpec,
    Scalar,
    a_power,
    loop_value,
    quantum_factorial,
    quantum_integer,
    root_of_unity,
    scalar_from_json,
)
from .matrices import RingMatrix, matrix_from_json
from .tl import (
    NetworkTerm,
    PlanarDiagram,
    diagram_from_json,
    evaluate_network,
    jones_wenzl,
    network_from_json,
    resolve_bracket,
    tet_network,
    theta_network,
    unknot_network,
)
from .spaces import (
    UniTrivalentGraph,
    channel_colors,
    dimension,
    enumerate_colorings,
    graph_from_json,
    is_admissible_triple,
    standard_graph,
)
from .recoupling import fusion_matrix, middle_colors, sixj, tet, theta
from .twists import (
    dual_twist_matrix,
    edge_twist_matrix,
    interval_twist_matrix,
    omega_coefficients,
    pure_braid_twist,
    twist_eigenvalue,
)
from .certificates import (
    Certificate,
    CheckRecord,
    build_decomposition_graph,
    certify_four_punctures,
    certify_irreducible,
    certify_one_holed_torus,
    connectivity,
    induction_step_graph,
    multiplicity_free_check,
    replay_certificate,
    to_canonical_json,
)
from .density import (
    EigenvalueSet,
    certify_density,
    dimension_conditions,
    eigenvalue_set,
    infinite_order_ratio,
    noniso_check,
    tet_nonzero_generic,
    weight_scalar_analysis,
)

__version__ = "0.1.0"

__all__ = [
    "GENERIC",
    "RingSpec",
    "Scalar",
    "a_power",
    "loop_value",
    "quantum_factorial",
    "quantum_integer",
    "root_of_unity",
    "scalar_from_json",
    "RingMatrix",
    "matrix_from_json",
    "NetworkTerm",
    "PlanarDiagram",
    "diagram_from_json",
    "evaluate_network",
    "jones_wenzl",
    "network_from_json",
    "resolve_bracket",
    "tet_network",
    "theta_network",
    "unknot_network",
    "UniTrivalentGraph",
    "channel_colors",
    "dimension",
    "enumerate_colorings",
    "graph_from_json",
    "is_admissible_triple",
    "standard_graph",
    "fusion_matrix",
    "middle_colors",
    "sixj",
    "tet",
    "theta",
    "dual_twist_matrix",
    "edge_twist_matrix",
    "interval_twist_matrix",
    "omega_coefficients",
    "pure_braid_twist",
    "twist_eigenvalue",
    "Certificate",
    "CheckRecord",
    "build_decomposition_graph",
    "certify_four_punctures",
    "certify_irreducible",
    "certify_one_holed_torus",
    "connectivity",
    "induction_step_graph",
    "multiplicity_free_check",
    "replay_certificate",
    "to_canonical_json",
    "EigenvalueSet",
    "certify_density",
    "dimension_conditions",
    "eigenvalue_set",
    "infinite_order_ratio",
    "noniso_check",
    "tet_nonzero_generic",
    "weight_scalar_analysis",
]
