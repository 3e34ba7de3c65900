"""Bootstrap confidence band for damage evolution, Gaussian parametrization and coverage."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DamageDataError, GridMismatchError

DEFAULT_GRID_POINTS = 150
DEFAULT_N_BOOT = 2000
BANDS = ("population", "mean")
_CHUNK = 64


@dataclass(frozen=True, eq=False)
class DamageSeries:
    """Damage snapshots of one simulation. Rejected unless monotone in time and in [0, 1].

    ``source_rows`` optionally maps sample index to an input row number for
    error messages.
    """

    simulation_id: str
    times: np.ndarray
    damage: np.ndarray
    source_rows: Sequence[int] | None = field(default=None, repr=False)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        d = np.asarray(self.damage, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "damage", d)
        sid = self.simulation_id

        def row(k):
            return self.source_rows[k] if self.source_rows is not None else k

        if t.ndim != 1 or t.shape != d.shape or t.size == 0:
            raise DamageDataError(f"series {sid}: times and damage must be equal-length 1-d arrays", sid)
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(d))):
            k = int(np.flatnonzero(~(np.isfinite(t) & np.isfinite(d)))[0])
            raise DamageDataError(f"series {sid}: non-finite value at row {row(k)}", sid, row(k))
        bad = np.flatnonzero((d < 0) | (d > 1))
        if bad.size:
            k = int(bad[0])
            raise DamageDataError(f"series {sid}: damage {d[k]} outside [0, 1] at row {row(k)}", sid, row(k))
        bad = np.flatnonzero(np.diff(t) <= 0)
        if bad.size:
            k = int(bad[0]) + 1
            raise DamageDataError(f"series {sid}: time not strictly increasing at row {row(k)}", sid, row(k))
        bad = np.flatnonzero(np.diff(d) < 0)
        if bad.size:
            k = int(bad[0]) + 1
            raise DamageDataError(f"series {sid}: damage decreases at row {row(k)}", sid, row(k))

    def __eq__(self, other):
        if not isinstance(other, DamageSeries):
            return NotImplemented
        return (
            self.simulation_id == other.simulation_id
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.damage, other.damage)
        )


@dataclass(frozen=True, eq=False)
class AlignedDamage:
    """Damage of many series on one time grid; NaN marks absent cells."""

    times: np.ndarray
    values: np.ndarray
    ids: tuple[str, ...]

    @property
    def present(self) -> np.ndarray:
        return ~np.isnan(self.values)

    def __len__(self):
        return self.values.shape[0]

    def subset(self, rows) -> AlignedDamage:
        rows = list(rows)
        return AlignedDamage(self.times, self.values[rows], tuple(self.ids[r] for r in rows))


def align(series: Sequence[DamageSeries], grid: int | Sequence[float] = DEFAULT_GRID_POINTS) -> AlignedDamage:
    """Interpolate every series onto a common grid.

    ``grid`` is either explicit times or a point count spread evenly over
    ``[0, latest sample time]``. Before its first sample a series reads 0,
    after its last sample it holds the final value.
    """
    if not series:
        raise ValueError("align needs at least one series")
    t_max = max(float(s.times[-1]) for s in series)
    if np.ndim(grid) == 0:
        times = np.linspace(0.0, t_max, int(grid))
    else:
        times = np.asarray(grid, dtype=float)
    vals = np.empty((len(series), times.size))
    for r, s in enumerate(series):
        vals[r] = np.interp(times, s.times, s.damage, left=0.0, right=s.damage[-1])
    vals[:, (times < 0) | (times > t_max)] = np.nan
    return AlignedDamage(times, vals, tuple(s.simulation_id for s in series))


@dataclass(frozen=True, eq=False)
class DamageModel:
    time_grid: np.ndarray
    mean: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    sigma: np.ndarray
    n_train: int
    n_boot: int
    seed: int
    level: float = 0.95
    band: str = "population"
    method: str = "percentile"

    def to_dict(self) -> dict:
        return {
            "grid": self.time_grid.tolist(),
            "mean": self.mean.tolist(),
            "lower": self.lower.tolist(),
            "upper": self.upper.tolist(),
            "sigma": self.sigma.tolist(),
            "metadata": {
                "n_train": self.n_train,
                "n_boot": self.n_boot,
                "seed": self.seed,
                "level": self.level,
                "band": self.band,
                "method": self.method,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> DamageModel:
        m = d["metadata"]
        arr = lambda k: np.asarray(d[k], dtype=float)  # noqa: E731
        return cls(
            arr("grid"), arr("mean"), arr("lower"), arr("upper"), arr("sigma"),
            int(m["n_train"]), int(m["n_boot"]), int(m["seed"]), float(m["level"]),
            m.get("band", "population"), m.get("method", "percentile"),
        )

    def grid_index(self, t: float) -> int:
        hits = np.flatnonzero(np.abs(self.time_grid - t) <= 1e-12 * max(1.0, abs(t)))
        if hits.size == 0:
            raise GridMismatchError(f"time {t} is not on the model grid")
        return int(hits[0])


def gaussian_sigma(mean, lower, upper):
    return np.maximum(0.5 * (mean - lower), 0.5 * (upper - mean))


def _replicate_indices(n: int, n_boot: int, seed: int) -> np.ndarray:
    # one child stream per replicate, so any split of the replicates agrees
    children = np.random.SeedSequence(seed).spawn(n_boot)
    return np.stack([np.random.default_rng(c).integers(0, n, size=n) for c in children])


def fit(
    train: AlignedDamage,
    n_boot: int = DEFAULT_N_BOOT,
    seed: int = 0,
    level: float = 0.95,
    band: str = "population",
) -> DamageModel:
    """Bootstrap the damage band over time, resampling whole curves.

    ``band="mean"`` gives the percentile interval of the resampled mean
    curve. ``band="population"`` averages, over replicates, the per-time
    lower and upper quantiles of the resampled curves, which brackets
    individual held-out curves rather than their average.
    """
    X = np.asarray(train.values, dtype=float)
    n = X.shape[0]
    if n < 2:
        raise ValueError("fit needs at least two training series")
    if n_boot < 1:
        raise ValueError("n_boot must be >= 1")
    if not 0 < level < 1:
        raise ValueError("level must be in (0, 1)")
    if band not in BANDS:
        raise ValueError(f"band must be one of {BANDS}")
    alpha = 1.0 - level
    q = (alpha / 2, 1 - alpha / 2)

    idx = _replicate_indices(n, n_boot, seed)
    gaps = bool(np.isnan(X).any())
    avg = np.nanmean if gaps else np.mean
    quant = np.nanquantile if gaps else np.quantile
    with np.errstate(all="ignore"), warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        mean = avg(X, axis=0)
        if band == "mean":
            stats = np.empty((n_boot, X.shape[1]))
            for s in range(0, n_boot, _CHUNK):
                stats[s : s + _CHUNK] = avg(X[idx[s : s + _CHUNK]], axis=1)
            lower, upper = quant(stats, q, axis=0)
        else:
            # Weibull plotting positions p*(n+1): expected coverage of a fresh
            # draw equals the nominal level for continuous data.
            lo_sum = np.zeros(X.shape[1])
            hi_sum = np.zeros(X.shape[1])
            for s in range(0, n_boot, _CHUNK):
                lo, hi = quant(X[idx[s : s + _CHUNK]], q, axis=1, method="weibull")
                lo_sum += lo.sum(axis=0)
                hi_sum += hi.sum(axis=0)
            lower, upper = lo_sum / n_boot, hi_sum / n_boot

    mean = np.clip(mean, 0.0, 1.0)
    lower = np.clip(np.minimum(lower, mean), 0.0, 1.0)
    upper = np.clip(np.maximum(upper, mean), 0.0, 1.0)
    return DamageModel(
        train.times.copy(), mean, lower, upper, gaussian_sigma(mean, lower, upper),
        n, n_boot, seed, level, band,
    )


@dataclass(frozen=True, eq=False)
class CoverageReport:
    times: np.ndarray
    n_test: np.ndarray
    covered: np.ndarray

    @property
    def coverage(self) -> np.ndarray:
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(self.n_test > 0, self.covered / np.maximum(self.n_test, 1), np.nan)

    @property
    def mean_coverage(self) -> float:
        """Average coverage over grid times that have at least one test value."""
        c = self.coverage
        return float(np.nanmean(c)) if np.any(self.n_test > 0) else float("nan")


def coverage(model: DamageModel, test: AlignedDamage) -> CoverageReport:
    """Fraction of test values strictly inside (lower, upper) at each time."""
    if test.times.shape != model.time_grid.shape or not np.array_equal(test.times, model.time_grid):
        raise GridMismatchError("test data is not aligned to the model grid")
    present = test.present
    v = np.where(present, test.values, np.nan)
    with np.errstate(invalid="ignore"):
        inside = (v > model.lower) & (v < model.upper) & present
    return CoverageReport(model.time_grid.copy(), present.sum(axis=0), inside.sum(axis=0))


def sample_parametric(model: DamageModel, t: float, seed: int, size: int | None = None):
    """Draw from Normal(mean(t), sigma(t)), clamped to [0, 1]."""
    k = model.grid_index(t)
    mu, sd = float(model.mean[k]), float(model.sigma[k])
    if sd == 0.0:
        return mu if size is None else np.full(size, mu)
    draw = np.random.default_rng(seed).normal(mu, sd, size=size)
    out = np.clip(draw, 0.0, 1.0)
    return float(out) if size is None else out
