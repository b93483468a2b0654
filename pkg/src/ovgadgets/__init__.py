"""Gadget graphs for orthogonal-vectors reductions, exact centrality solvers,
and machine-checked distance claims."""

from .centrality import betweenness, betweenness_of, betweenness_subset_of, reach_centrality
from .gadgets import (
    BcPair,
    GadgetError,
    GadgetMeta,
    audit_gadget,
    build_bc_bounded,
    build_bc_sparse,
    build_ov_dia,
    build_ov_graph,
    build_ov_rad,
    build_rc_gadget,
    ceil_lg,
    default_p,
    describe_gadget,
    predict_bc_bounded_counts,
    predict_ov_dia_counts,
)
from .graph import (
    UNREACHABLE,
    DisconnectedError,
    GraphBuilder,
    GraphError,
    LabeledGraph,
    all_eccentricities,
    assert_connected,
    bfs_distances,
    diameter,
    distance_matrix,
    dumps_dot,
    dumps_graph,
    eccentricities_of,
    eccentricity,
    loads_graph,
    max_degree,
    radius,
    read_graph,
    relabel_bfs_order,
    split_to_degree3,
    write_graph,
)
from .instances import (
    GENERATORS,
    InstanceError,
    OraclePairResult,
    OVInstance,
    drop_unused_coordinates,
    find_hitting_vectors,
    find_orthogonal_pair,
    gen_hitting_free,
    gen_orthogonal_free,
    gen_planted_hitting,
    gen_planted_orthogonal,
    gen_random,
    gen_two_sided_orthogonal,
    is_orthogonal,
    make_instance,
    make_two_sided,
    read_instance,
    write_instance,
)
from .roles import Role, RoleKind
from .verify import (
    CalibrationError,
    ThresholdCalibration,
    VerdictReport,
    calibrate_bc_threshold,
    check_dia_claims,
    check_ecc_gap,
    check_ov_observation,
    cross_validate,
    decide_hs_via_radius,
    decide_ov_via_bc_bounded,
    decide_ov_via_bc_sparse,
    decide_ov_via_diameter,
    decide_ov_via_rc,
)

__version__ = "0.1.0"
