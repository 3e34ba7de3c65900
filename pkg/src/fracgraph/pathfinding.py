"""Failure-zone graph with boundary nodes, and weighted shortest failure paths."""

from __future__ import annotations

import functools
import heapq
import math
from dataclasses import dataclass, field
from typing import Union

from .coalescence import CoalescenceEdge, FpzParameters, coalescence_edges
from .errors import DegenerateZoneError, NoPathError
from .geometry import CrackNetwork, Point, Tip, TipRef, all_tips, zero_degree_cracks
from .zoning import (
    PRE_EXISTING_WEIGHT,
    ComponentSummary,
    EdgeKind,
    FailureZoneSelection,
    ProtoGraph,
    ZoneConfig,
    build_proto_graph,
    components_per_zone,
    select_failure_zone,
    zone_of,
)

DEFAULT_MAX_PATHS = 4


@dataclass(frozen=True)
class BoundaryNode:
    side: str  # "left" or "right"
    position: Point


Node = Union[TipRef, BoundaryNode]


@dataclass(frozen=True)
class GraphEdge:
    weight: float
    kind: EdgeKind


@dataclass(frozen=True)
class FailureGraph:
    """Undirected weighted graph over integer node ids.

    Node 0 is the left boundary, the last node the right boundary, and the
    tips in between are sorted by ``(crack_id, which)``. Edge keys are
    ``(i, j)`` with ``i < j``.
    """

    nodes: tuple[Node, ...]
    edges: dict[tuple[int, int], GraphEdge]
    zone_index: int = 0

    @property
    def left(self) -> int:
        return 0

    @property
    def right(self) -> int:
        return len(self.nodes) - 1

    @functools.cached_property
    def adjacency(self) -> dict[int, list[tuple[int, float]]]:
        adj: dict[int, list[tuple[int, float]]] = {i: [] for i in range(len(self.nodes))}
        for (i, j), e in self.edges.items():
            adj[i].append((j, e.weight))
            adj[j].append((i, e.weight))
        return adj

    @functools.cached_property
    def index(self) -> dict[Node, int]:
        return {n: i for i, n in enumerate(self.nodes)}

    def weight(self, i: int, j: int) -> float:
        return self.edges[(min(i, j), max(i, j))].weight

    def path_weight(self, ids) -> float:
        total = 0.0
        for a, b in zip(ids, ids[1:]):
            total += self.weight(a, b)
        return total


@dataclass(frozen=True)
class PredictedPath:
    node_ids: tuple[int, ...]
    nodes: tuple[Node, ...]
    total_weight: float
    crack_ids: frozenset[int]
    constrained: bool = False

    @property
    def node_sequence(self) -> tuple[Node, ...]:
        return self.nodes

    def crack_sequence(self) -> list[int]:
        """Crack ids in traversal order, each listed once."""
        out: list[int] = []
        for n in self.nodes:
            if isinstance(n, TipRef) and n.crack_id not in out:
                out.append(n.crack_id)
        return out


@dataclass(frozen=True)
class FailurePrediction:
    selection: FailureZoneSelection
    paths: tuple[PredictedPath, ...]
    graph: FailureGraph


def boundary_nodes(network: CrackNetwork, zone_index: int, config: ZoneConfig) -> tuple[BoundaryNode, BoundaryNode]:
    dom = network.domain
    y = dom.y_min + (zone_index - 0.5) * dom.height / config.num_zones
    return BoundaryNode("left", (dom.x_min, y)), BoundaryNode("right", (dom.x_max, y))


def build_failure_graph(network: CrackNetwork, selection: FailureZoneSelection, config: ZoneConfig) -> FailureGraph:
    zi = selection.zone_index
    tips = sorted(t for t in all_tips(network) if zone_of(t.position, network.domain, config) == zi)
    if not tips:
        raise DegenerateZoneError(f"failure zone {zi} contains no crack tips")
    left, right = boundary_nodes(network, zi, config)
    nodes: tuple[Node, ...] = (left, *tips, right)
    pos = [n.position for n in nodes]

    edges: dict[tuple[int, int], GraphEdge] = {}

    def put(i, j, w, kind):
        key = (min(i, j), max(i, j))
        if key not in edges or w < edges[key].weight:
            edges[key] = GraphEdge(w, kind)

    for i in range(len(nodes)):
        near = sorted((math.dist(pos[i], pos[j]), j) for j in range(len(nodes)) if j != i)
        for d, j in near[:2]:
            put(i, j, d, EdgeKind.NEIGHBOR)

    idx = {t: i + 1 for i, t in enumerate(tips)}
    for c in network.cracks:
        a, b = TipRef(c.id, Tip.A, c.tip_a), TipRef(c.id, Tip.B, c.tip_b)
        if a in idx and b in idx:
            put(idx[a], idx[b], PRE_EXISTING_WEIGHT, EdgeKind.CRACK)
    return FailureGraph(nodes, edges, zi)


def _sweep(graph: FailureGraph, source: int) -> dict[int, tuple[float, tuple[int, ...]]]:
    """Dijkstra from ``source``; labels are (distance, path) so equal-weight
    ties resolve to the lexicographically smallest id sequence."""
    adj = graph.adjacency
    best: dict[int, tuple[float, tuple[int, ...]]] = {}
    heap = [(0.0, (source,))]
    while heap:
        dist, path = heapq.heappop(heap)
        u = path[-1]
        if u in best:
            continue
        best[u] = (dist, path)
        for v, w in adj[u]:
            if v not in best:
                heapq.heappush(heap, (dist + w, path + (v,)))
    return best


def _make_path(graph: FailureGraph, ids, marked: frozenset[int] = frozenset()) -> PredictedPath:
    ids = tuple(ids)
    nodes = tuple(graph.nodes[i] for i in ids)
    cracks = frozenset(n.crack_id for n in nodes if isinstance(n, TipRef))
    return PredictedPath(ids, nodes, graph.path_weight(ids), cracks, bool(marked.intersection(ids)))


def shortest_path(graph: FailureGraph) -> PredictedPath:
    found = _sweep(graph, graph.left).get(graph.right)
    if found is None:
        raise NoPathError("left and right boundary nodes are not connected")
    return _make_path(graph, found[1])


def _splice(head: tuple[int, ...], tail: tuple[int, ...]) -> tuple[int, ...]:
    """Join ``head`` (ending at v) and ``tail`` (starting at v) into a simple path.

    The first node of ``head`` that reappears in ``tail`` is where the loop
    is cut.
    """
    where = {n: k for k, n in enumerate(tail)}
    for i, n in enumerate(head):
        if n in where:
            return head[:i] + tail[where[n] :]
    raise AssertionError("head and tail must share their junction node")


def _component_ids(graph: FailureGraph, component: ComponentSummary) -> frozenset[int]:
    return frozenset(graph.index[n] for n in component.node_set if n in graph.index)


def constrained_paths(graph: FailureGraph, component: ComponentSummary, max_paths: int = DEFAULT_MAX_PATHS) -> list[PredictedPath]:
    """Shortest paths forced through each node of ``component`` in turn.

    Candidates whose loop splicing drops every component node are discarded.
    """
    marked = _component_ids(graph, component)
    from_left = _sweep(graph, graph.left)
    from_right = _sweep(graph, graph.right)
    seen: dict[tuple[int, ...], PredictedPath] = {}
    for v in sorted(marked):
        if v not in from_left or v not in from_right:
            continue
        head = from_left[v][1]
        tail = tuple(reversed(from_right[v][1]))
        ids = _splice(head, tail)
        if ids in seen or not marked.intersection(ids):
            continue
        seen[ids] = _make_path(graph, ids, marked)
    ranked = sorted(seen.values(), key=lambda p: (p.total_weight, p.node_ids))
    return ranked[:max_paths]


@dataclass
class PipelineTrace:
    """Intermediate artifacts of one prediction, stage by stage."""

    zero_degree: list[int]
    coalescence: list[CoalescenceEdge]
    proto_graph: ProtoGraph
    components: list = field(default_factory=list)
    selection: FailureZoneSelection | None = None
    boundary: tuple[BoundaryNode, BoundaryNode] | None = None
    graph: FailureGraph | None = None
    prediction: FailurePrediction | None = None


def trace_prediction(
    network: CrackNetwork,
    params: FpzParameters | None = None,
    config: ZoneConfig | None = None,
    max_paths: int = DEFAULT_MAX_PATHS,
) -> PipelineTrace:
    params = params or FpzParameters()
    config = config or ZoneConfig()
    edges = coalescence_edges(network, params)
    proto = build_proto_graph(network, edges)
    tr = PipelineTrace(zero_degree_cracks(network), edges, proto)
    tr.components = components_per_zone(proto, network.domain, config)
    tr.selection = select_failure_zone(tr.components)
    tr.boundary = boundary_nodes(network, tr.selection.zone_index, config)
    tr.graph = build_failure_graph(network, tr.selection, config)

    marked = _component_ids(tr.graph, tr.selection.maximal_component)
    best = shortest_path(tr.graph)
    best = _make_path(tr.graph, best.node_ids, marked)
    pool = {best.node_ids: best}
    for p in constrained_paths(tr.graph, tr.selection.maximal_component, max_paths):
        pool.setdefault(p.node_ids, p)
    paths = sorted(pool.values(), key=lambda p: (p.total_weight, p.node_ids))[:max_paths]
    tr.prediction = FailurePrediction(tr.selection, tuple(paths), tr.graph)
    return tr


def predict(
    network: CrackNetwork,
    params: FpzParameters | None = None,
    config: ZoneConfig | None = None,
    max_paths: int = DEFAULT_MAX_PATHS,
) -> FailurePrediction:
    return trace_prediction(network, params, config, max_paths).prediction
