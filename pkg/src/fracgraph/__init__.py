"""Graph-based failure-path and damage-evolution surrogate for brittle fracture."""

from .coalescence import CoalescenceEdge, FpzParameters, coalescence_edges, fpz_length, nearest_tips
from .damage import AlignedDamage, CoverageReport, DamageModel, DamageSeries, align, coverage, fit, sample_parametric
from .geometry import (
    CrackNetwork,
    CrackSegment,
    Domain,
    Orientation,
    Tip,
    TipRef,
    all_tips,
    make_crack,
    validate_network,
    zero_degree_cracks,
)
from .pathfinding import (
    BoundaryNode,
    FailureGraph,
    FailurePrediction,
    PredictedPath,
    build_failure_graph,
    constrained_paths,
    predict,
    shortest_path,
    trace_prediction,
)
from .scoring import Classification, MatchResult, ReferencePath, score_path, score_prediction, tabulate
from .synth import ConfigSpec, DamageCurveSpec, generate_damage_curves, generate_network
from .zoning import (
    ComponentSummary,
    FailureZoneSelection,
    ProtoGraph,
    TieBreak,
    ZoneConfig,
    build_proto_graph,
    components_per_zone,
    select_failure_zone,
    zone_of,
)

__version__ = "0.1.0"
