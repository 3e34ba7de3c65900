"""Domain and crack-network types, validation and tip enumeration."""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

Point = tuple[float, float]

ANGLE_TOL = 1e-6


class Orientation(enum.IntEnum):
    DEG0 = 0
    DEG60 = 60
    DEG120 = 120

    @property
    def radians(self) -> float:
        return math.radians(self.value)


class Tip(enum.Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class Domain:
    """Axis-aligned rectangle. Loading pulls the top edge; the bottom is fixed.

    ``x_min``/``y_min`` default to the origin; they only exist so that a
    network can be rigidly translated together with its domain.
    """

    width: float
    height: float
    x_min: float = 0.0
    y_min: float = 0.0

    @property
    def x_max(self) -> float:
        return self.x_min + self.width

    @property
    def y_max(self) -> float:
        return self.y_min + self.height

    def contains(self, p: Point) -> bool:
        x, y = p
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max


@dataclass(frozen=True)
class CrackSegment:
    id: int
    tip_a: Point
    tip_b: Point
    orientation: Orientation

    @property
    def length(self) -> float:
        return math.dist(self.tip_a, self.tip_b)

    def tip(self, which: Tip) -> Point:
        return self.tip_a if which is Tip.A else self.tip_b

    def angle_error(self) -> float:
        """Distance (radians, modulo pi) between the segment angle and its tag."""
        dx = self.tip_b[0] - self.tip_a[0]
        dy = self.tip_b[1] - self.tip_a[1]
        d = (math.atan2(dy, dx) - self.orientation.radians) % math.pi
        return min(d, math.pi - d)


@dataclass(frozen=True)
class CrackNetwork:
    domain: Domain
    cracks: tuple[CrackSegment, ...]

    def __post_init__(self):
        object.__setattr__(self, "cracks", tuple(self.cracks))

    def crack(self, crack_id: int) -> CrackSegment:
        return self._by_id[crack_id]

    @functools.cached_property
    def _by_id(self) -> dict[int, CrackSegment]:
        return {c.id: c for c in self.cracks}


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class TipRef:
    """One end of a crack. Ordered and hashed by ``(crack_id, which)`` only."""

    crack_id: int
    which: Tip
    position: Point

    @property
    def key(self) -> tuple[int, str]:
        return (self.crack_id, self.which.value)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TipRef):
            return NotImplemented
        return self.key == other.key

    def __lt__(self, other: TipRef) -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return hash(self.key)


@dataclass(frozen=True)
class Violation:
    crack_id: int | None
    kind: str
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    # Informational only; intersecting cracks are allowed.
    intersections: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return "\n".join(f"crack {v.crack_id}: {v.kind}: {v.message}" for v in self.violations)


def _segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    def on_segment(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if o1 != o2 and o3 != o4:
        return True
    return (
        (o1 == 0 and on_segment(p1, p2, q1))
        or (o2 == 0 and on_segment(p1, p2, q2))
        or (o3 == 0 and on_segment(q1, q2, p1))
        or (o4 == 0 and on_segment(q1, q2, p2))
    )


def validate_network(network: CrackNetwork) -> ValidationReport:
    """Check every invariant of the network; problems are returned, not raised.

    Violations are sorted by (crack id, kind) so the report does not depend
    on crack order.
    """
    report = ValidationReport()
    dom = network.domain
    if not dom.width > 0 or not dom.height > 0:
        report.violations.append(
            Violation(None, "domain", f"non-positive domain size {dom.width} x {dom.height}")
        )

    seen: dict[int, int] = {}
    for c in network.cracks:
        seen[c.id] = seen.get(c.id, 0) + 1
    for cid, n in seen.items():
        if n > 1:
            report.violations.append(Violation(cid, "duplicate-id", f"id used by {n} cracks"))

    for c in network.cracks:
        if c.tip_a == c.tip_b:
            report.violations.append(Violation(c.id, "zero-length", "tip_a equals tip_b"))
        else:
            err = c.angle_error()
            if err > ANGLE_TOL:
                report.violations.append(
                    Violation(c.id, "orientation", f"angle off tag {c.orientation.value} by {err:.3g} rad")
                )
        for which in Tip:
            p = c.tip(which)
            if not all(math.isfinite(v) for v in p) or not dom.contains(p):
                report.violations.append(
                    Violation(c.id, "out-of-domain", f"tip {which.value} at {p} outside domain")
                )

    report.violations.sort(key=lambda v: (-1 if v.crack_id is None else v.crack_id, v.kind, v.message))

    cracks = sorted(network.cracks, key=lambda c: c.id)
    for i, c1 in enumerate(cracks):
        for c2 in cracks[i + 1 :]:
            if _segments_intersect(c1.tip_a, c1.tip_b, c2.tip_a, c2.tip_b):
                report.intersections.append((c1.id, c2.id))
    return report


def zero_degree_cracks(network: CrackNetwork) -> list[int]:
    return [c.id for c in network.cracks if c.orientation is Orientation.DEG0]


def all_tips(network: CrackNetwork) -> list[TipRef]:
    return [TipRef(c.id, w, c.tip(w)) for c in network.cracks for w in (Tip.A, Tip.B)]


def make_crack(crack_id: int, center: Point, length: float, orientation: Orientation | int) -> CrackSegment:
    """Build a crack from its midpoint, length and orientation tag."""
    orientation = Orientation(orientation)
    th = orientation.radians
    hx, hy = 0.5 * length * math.cos(th), 0.5 * length * math.sin(th)
    if orientation is Orientation.DEG0:
        hy = 0.0
    cx, cy = center
    return CrackSegment(crack_id, (cx - hx, cy - hy), (cx + hx, cy + hy), orientation)
