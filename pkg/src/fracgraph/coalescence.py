"""Fracture-process-zone overlap between 0-degree crack tips and their neighbors."""

from __future__ import annotations

import math
from decimal import Decimal
from dataclasses import dataclass

from .geometry import CrackNetwork, CrackSegment, TipRef, all_tips, zero_degree_cracks


@dataclass(frozen=True)
class FpzParameters:
    # FPZ length as a fraction of (l1 + l2); stands in for the (sigma/sigma_y)^2 constant.
    fraction: float = 0.75
    k_neighbors: int = 10

    def __post_init__(self):
        if not 0 < self.fraction <= 1:
            raise ValueError(f"fraction must be in (0, 1], got {self.fraction}")
        if self.k_neighbors < 1:
            raise ValueError(f"k_neighbors must be >= 1, got {self.k_neighbors}")


@dataclass(frozen=True)
class CoalescenceEdge:
    source: TipRef
    target: TipRef
    weight: float

    @property
    def pair(self) -> tuple[TipRef, TipRef]:
        return (self.source, self.target)


def _nominal(x: float) -> Decimal:
    # 12 significant digits strips the ulp noise that tip coordinates
    # leave on a crack length (0.30000000000000004 -> 0.3)
    return Decimal(f"{x:.12g}")


def fpz_length(crack_1: CrackSegment, crack_2: CrackSegment, params: FpzParameters) -> float:
    """``fraction * (l1 + l2)`` on the nominal lengths, rounded once, so two
    0.3 m cracks at fraction 0.75 give exactly 0.45."""
    return float(_nominal(params.fraction) * (_nominal(crack_1.length) + _nominal(crack_2.length)))


def nearest_tips(query: TipRef, network: CrackNetwork, k: int) -> list[tuple[TipRef, float]]:
    """The ``k`` tips closest to ``query``, skipping both tips of its own crack.

    Ties in distance fall back to ``(crack_id, which)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    cands = [
        (math.dist(query.position, t.position), t)
        for t in all_tips(network)
        if t.crack_id != query.crack_id
    ]
    cands.sort(key=lambda c: (c[0], c[1].key))
    return [(t, d) for d, t in cands[:k]]


def coalescence_edges(network: CrackNetwork, params: FpzParameters | None = None) -> list[CoalescenceEdge]:
    params = params or FpzParameters()
    found: dict[tuple[TipRef, TipRef], float] = {}
    for cid in zero_degree_cracks(network):
        crack = network.crack(cid)
        for tip in all_tips(CrackNetwork(network.domain, (crack,))):
            for other, dist in nearest_tips(tip, network, params.k_neighbors):
                if dist <= fpz_length(crack, network.crack(other.crack_id), params):
                    found[tuple(sorted((tip, other)))] = dist
    return [CoalescenceEdge(a, b, w) for (a, b), w in sorted(found.items())]
