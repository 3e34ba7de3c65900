"""Random crack configurations and synthetic damage curves for desk-scale studies."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .damage import DamageSeries
from .errors import InfeasibleSpecError
from .geometry import CrackNetwork, CrackSegment, Domain, Orientation, make_crack

MAX_REJECTIONS = 100_000
SNAPSHOT_DT = 2e-5  # 2000 steps of 1e-8 s


@dataclass(frozen=True)
class ConfigSpec:
    n_cracks: int = 20
    crack_length: float = 0.3
    orientations: tuple[int, ...] = (0, 60, 120)
    domain: Domain = field(default_factory=lambda: Domain(2.0, 3.0))
    min_tip_separation: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.n_cracks < 1 or not self.crack_length > 0 or self.min_tip_separation < 0:
            raise ValueError(f"invalid spec {self}")
        if not self.orientations:
            raise ValueError("at least one orientation is required")
        for o in self.orientations:
            Orientation(o)


def generate_network(spec: ConfigSpec) -> CrackNetwork:
    """Place cracks one at a time by rejection sampling.

    A candidate is rejected when one of its tips lies closer than
    ``min_tip_separation`` to a tip already placed.
    """
    rng = np.random.default_rng(spec.seed)
    dom = spec.domain
    orients = [Orientation(o) for o in spec.orientations]
    placed: list[CrackSegment] = []
    tips: list[tuple[float, float]] = []
    sep = spec.min_tip_separation
    for cid in range(spec.n_cracks):
        for _ in range(MAX_REJECTIONS):
            o = orients[int(rng.integers(len(orients)))]
            hx = 0.5 * spec.crack_length * abs(math.cos(o.radians))
            hy = 0.0 if o is Orientation.DEG0 else 0.5 * spec.crack_length * abs(math.sin(o.radians))
            if 2 * hx > dom.width or 2 * hy > dom.height:
                continue
            cx = rng.uniform(dom.x_min + hx, dom.x_max - hx)
            cy = rng.uniform(dom.y_min + hy, dom.y_max - hy)
            c = make_crack(cid, (cx, cy), spec.crack_length, o)
            if not (dom.contains(c.tip_a) and dom.contains(c.tip_b)):
                continue
            if all(math.dist(p, q) >= sep for p in (c.tip_a, c.tip_b) for q in tips):
                placed.append(c)
                tips.extend((c.tip_a, c.tip_b))
                break
        else:
            raise InfeasibleSpecError(
                f"crack {cid}: {MAX_REJECTIONS} consecutive rejections, spec is infeasible"
            )
    return CrackNetwork(dom, tuple(placed))


@dataclass(frozen=True)
class DamageCurveSpec:
    n_curves: int = 190
    failure_time_range: tuple[float, float] = (1.5e-3, 2.0e-3)
    steepness_range: tuple[float, float] = (8.0, 16.0)
    noise_scale: float = 0.05
    seed: int = 0
    # each series stops this many logistic widths past its failure time
    tail_widths: float = 5.0
    dt: float = SNAPSHOT_DT

    def __post_init__(self):
        lo, hi = self.failure_time_range
        s_lo, s_hi = self.steepness_range
        if not (0 < lo < hi) or not (0 < s_lo < s_hi) or self.noise_scale < 0 or self.n_curves < 0:
            raise ValueError(f"invalid damage curve spec {self}")


def logistic_damage(t, failure_time: float, steepness: float):
    """Logistic in ``t / failure_time`` centered on the failure time."""
    return 1.0 / (1.0 + np.exp(-steepness * (np.asarray(t) / failure_time - 1.0)))


def generate_damage_curves(spec: DamageCurveSpec) -> list[DamageSeries]:
    rng = np.random.default_rng(spec.seed)
    out = []
    for i in range(spec.n_curves):
        tf = rng.uniform(*spec.failure_time_range)
        s = rng.uniform(*spec.steepness_range)
        amp = 1.0 - spec.noise_scale * rng.uniform()
        t_end = tf * (1.0 + spec.tail_widths / s)
        t = np.arange(0.0, t_end + 0.5 * spec.dt, spec.dt)
        base = logistic_damage(t, tf, s)
        jitter = spec.noise_scale * 0.1 * rng.standard_normal(t.size) * base * (1.0 - base)
        d = amp * np.maximum.accumulate(np.clip(base + jitter, 0.0, 1.0))
        out.append(DamageSeries(f"sim{i:04d}", t, np.clip(d, 0.0, 1.0)))
    return out
