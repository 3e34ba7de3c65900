"""Match predicted paths against a reference failure path (accurate / reasonable / non-match)."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import UndefinedScoreError
from .pathfinding import FailurePrediction, PredictedPath


class Classification(str, enum.Enum):
    ACCURATE = "Accurate"
    REASONABLE = "Reasonable"
    NON_MATCH = "NonMatch"


@dataclass(frozen=True)
class ReferencePath:
    crack_ids: frozenset[int]
    simulation_id: str | None = None
    failure_zone: int | None = None
    polyline: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "crack_ids", frozenset(self.crack_ids))
        if not self.crack_ids:
            raise ValueError("reference path needs at least one crack id")


@dataclass(frozen=True)
class MatchResult:
    fraction_matched: float
    classification: Classification
    matched_ids: frozenset[int]
    unmatched_ids: frozenset[int]
    path_weight: float | None = None


def classify(fraction: float) -> Classification:
    # exactly one half counts as a reasonable match
    if fraction == 1.0:
        return Classification.ACCURATE
    if fraction >= 0.5:
        return Classification.REASONABLE
    return Classification.NON_MATCH


def score_ids(predicted_ids, reference_ids) -> MatchResult:
    predicted_ids = frozenset(predicted_ids)
    if not predicted_ids:
        raise UndefinedScoreError("predicted path touches no cracks")
    matched = predicted_ids & frozenset(reference_ids)
    frac = len(matched) / len(predicted_ids)
    return MatchResult(frac, classify(frac), matched, predicted_ids - matched)


def score_path(predicted: PredictedPath, reference: ReferencePath) -> MatchResult:
    r = score_ids(predicted.crack_ids, reference.crack_ids)
    return MatchResult(r.fraction_matched, r.classification, r.matched_ids, r.unmatched_ids, predicted.total_weight)


def score_prediction(prediction: FailurePrediction, reference: ReferencePath) -> MatchResult:
    """Best result over all predicted paths; ties go to the lightest path."""
    if not prediction.paths:
        raise UndefinedScoreError("prediction has no paths")
    scored = [score_path(p, reference) for p in prediction.paths if p.crack_ids]
    if not scored:
        raise UndefinedScoreError("no predicted path touches a crack")
    return min(scored, key=lambda r: (-r.fraction_matched, r.path_weight))


@dataclass
class Summary:
    counts: dict[Classification, int] = field(default_factory=lambda: {c: 0 for c in Classification})

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def fractions(self) -> dict[Classification, float]:
        n = self.total
        return {c: (k / n if n else 0.0) for c, k in self.counts.items()}

    def rows(self) -> list[tuple[str, int, float]]:
        fr = self.fractions()
        return [(c.value, self.counts[c], fr[c]) for c in Classification]


def tabulate(results: list[MatchResult]) -> Summary:
    s = Summary()
    for r in results:
        s.counts[r.classification] += 1
    return s
