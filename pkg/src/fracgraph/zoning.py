"""Horizontal zoning, per-zone connected components and failure-zone selection."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .coalescence import CoalescenceEdge
from .errors import NoCracksError, OutOfDomainError
from .geometry import CrackNetwork, Domain, Orientation, Point, Tip, TipRef, all_tips

PRE_EXISTING_WEIGHT = 1e-4


class EdgeKind(str, enum.Enum):
    CRACK = "crack"
    COALESCENCE = "coalescence"
    NEIGHBOR = "neighbor"


class TieBreak(str, enum.Enum):
    SIZE = "Size"
    ZERO_DEGREE_COUNT = "ZeroDegreeCount"
    LENGTH = "Length"
    LOADING_PROXIMITY = "LoadingProximity"


@dataclass(frozen=True)
class ZoneConfig:
    num_zones: int = 3

    def __post_init__(self):
        if self.num_zones < 1:
            raise ValueError(f"num_zones must be >= 1, got {self.num_zones}")

    def zone_bounds(self, domain: Domain, index: int) -> tuple[float, float]:
        h = domain.height / self.num_zones
        return domain.y_min + (index - 1) * h, domain.y_min + index * h


@dataclass(frozen=True)
class ProtoEdge:
    u: TipRef
    v: TipRef
    weight: float
    kind: EdgeKind


@dataclass(frozen=True)
class ProtoGraph:
    nodes: tuple[TipRef, ...]
    edges: tuple[ProtoEdge, ...]
    zero_degree: frozenset[int] = frozenset()


@dataclass(frozen=True)
class ComponentSummary:
    node_set: frozenset[TipRef]
    size: int
    zero_degree_count: int
    total_length: float
    zone_index: int

    def sorted_nodes(self) -> list[TipRef]:
        return sorted(self.node_set)


@dataclass(frozen=True)
class FailureZoneSelection:
    zone_index: int
    maximal_component: ComponentSummary
    tie_break_level_used: TieBreak


def build_proto_graph(network: CrackNetwork, coalescence: list[CoalescenceEdge]) -> ProtoGraph:
    edges: dict[tuple[TipRef, TipRef], ProtoEdge] = {}
    for c in network.cracks:
        a, b = TipRef(c.id, Tip.A, c.tip_a), TipRef(c.id, Tip.B, c.tip_b)
        edges[(a, b)] = ProtoEdge(a, b, PRE_EXISTING_WEIGHT, EdgeKind.CRACK)
    for e in coalescence:
        u, v = sorted(e.pair)
        if (u, v) not in edges:
            edges[(u, v)] = ProtoEdge(u, v, e.weight, EdgeKind.COALESCENCE)
    zero_deg = frozenset(c.id for c in network.cracks if c.orientation is Orientation.DEG0)
    return ProtoGraph(tuple(all_tips(network)), tuple(edges.values()), zero_deg)


def zone_of(point: Point, domain: Domain, config: ZoneConfig) -> int:
    """1-based band index counted from the bottom; band edges go to the upper band."""
    if not domain.contains(point):
        raise OutOfDomainError(f"point {point} outside domain")
    rel = (point[1] - domain.y_min) * config.num_zones / domain.height
    return min(int(math.floor(rel)) + 1, config.num_zones)


def _dfs_components(nodes: list[TipRef], adj: dict[TipRef, list[TipRef]]) -> list[list[TipRef]]:
    seen: set[TipRef] = set()
    out = []
    for start in nodes:
        if start in seen:
            continue
        seen.add(start)
        stack, comp = [start], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        out.append(comp)
    return out


def components_per_zone(graph: ProtoGraph, domain: Domain, config: ZoneConfig) -> list[ComponentSummary]:
    """Connected components of each zone-induced subgraph, zone by zone.

    Only edges with both ends inside a zone count toward that zone, so a
    crack straddling a band boundary splits into two singleton tips.
    """
    zone = {n: zone_of(n.position, domain, config) for n in graph.nodes}
    zero_deg = graph.zero_degree
    out = []
    for i in range(1, config.num_zones + 1):
        nodes = sorted(n for n in graph.nodes if zone[n] == i)
        adj: dict[TipRef, list[TipRef]] = {n: [] for n in nodes}
        induced = [e for e in graph.edges if zone[e.u] == i and zone[e.v] == i]
        for e in induced:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        for comp in _dfs_components(nodes, adj):
            members = frozenset(comp)
            length = math.fsum(e.weight for e in induced if e.u in members)
            out.append(
                ComponentSummary(
                    node_set=members,
                    size=len(members),
                    zero_degree_count=len({n.crack_id for n in members if n.crack_id in zero_deg}),
                    total_length=length,
                    zone_index=i,
                )
            )
    return out


_LADDER = (TieBreak.SIZE, TieBreak.ZERO_DEGREE_COUNT, TieBreak.LENGTH, TieBreak.LOADING_PROXIMITY)


def _rank_value(c: ComponentSummary, level: TieBreak):
    if level is TieBreak.SIZE:
        return c.size
    if level is TieBreak.ZERO_DEGREE_COUNT:
        return c.zero_degree_count
    if level is TieBreak.LENGTH:
        return c.total_length
    # loading is applied at the top edge, so higher zones are closer
    return c.zone_index


def select_failure_zone(components: list[ComponentSummary]) -> FailureZoneSelection:
    """Pick the maximal component: size, then 0-degree cracks, length, loading proximity.

    The reported level is the first rule that leaves a single candidate. If
    two components are indistinguishable by all four rules (same zone), the
    one with the smallest sorted node list wins and the level reads
    LoadingProximity.
    """
    if not components:
        raise NoCracksError("no connected components to select from")
    pool = list(components)
    level = TieBreak.LOADING_PROXIMITY
    for rule in _LADDER:
        best = max(_rank_value(c, rule) for c in pool)
        pool = [c for c in pool if _rank_value(c, rule) == best]
        if len(pool) == 1:
            level = rule
            break
    winner = min(pool, key=lambda c: c.sorted_nodes())
    return FailureZoneSelection(winner.zone_index, winner, level)
