"""String graphs: curve geometry, flow congestion, and balanced separators."""

from .graphs import EdgeCut, Graph, VertexCut, check_separator, generate, parse_graph, serialize_graph
from .geometry import (
    PolylineCurve,
    SegmentRelation,
    StringRepresentation,
    intersection_graph,
    random_segment_instance,
    segments_intersect,
)
from .topology import (
    AbstractTopologicalGraph,
    WeakRealization,
    crossing_count,
    expo_family,
    validate_weak_realization,
    weak_to_strings,
)
from .lp import LpProblem, LpSolution, lp_solve
from .congestion import FlowSolution, PathFlow, decompose_to_paths, edge_congestion, vertex_congestion
from .metrics import (
    derived_edge_weights,
    line_to_cut_sweep,
    ratio_functional,
    shortest_path_metric,
    sparsity_exact,
)
from .embedding import Embedding, best_embedding, bourgain_sample
from .cuts import (
    MengerCertificate,
    SeparatorResult,
    balanced_edge_cut,
    fhl_sweep,
    find_separator,
    min_separator_exact,
    min_vertex_cut,
)
from .experiments import (
    drawing_conflict_experiment,
    duality_report,
    even_subword,
    pcr_lower_bound,
)

__version__ = "0.1.0"
