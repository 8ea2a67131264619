"""Exact-arithmetic toolkit for perfectly oriented plabic networks in the disk."""

from .errors import (
    GenericityError,
    InputError,
    InternalInconsistencyError,
    ParseError,
    PlabicError,
    ResourceCapError,
)
from .geom import Dir, Point, Ray, cyclic_order, direction, local_wind, orient_sign, point, ray_segment_hits
from .network import (
    BLACK,
    WHITE,
    Edge,
    Face,
    PlabicNetwork,
    ValidationReport,
    Vertex,
    apply_weight_gauge,
    faces,
    validate,
)
from .flows import (
    EdgeFlow,
    FlowLimits,
    FlowStats,
    cycle_stats,
    enum_conservative,
    enum_edge_flows,
    enum_lews,
    loop_erase,
    path_stats,
    simple_cycles,
)
from .evec import (
    BoundaryMatrix,
    SolveResult,
    TruncatedVector,
    boundary_matrix,
    canonical_bc,
    null_edges,
    solve_system,
    talaska_all,
    talaska_vector,
    tnn_check,
    truncated_vector,
)

__version__ = "0.1.0"
