"""Threshold selection from the distribution of adjacent interaction gaps.

For every unordered pair of distinct interactions sharing an endpoint the
absolute time difference is recorded (direction is enforced at match
time, not here). The cumulative curve of those gaps plateaus past the
time scale the network actually operates at; the knee of the curve is
taken as the largest meaningful threshold, and evaluation thresholds are
derived as fixed percentages of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ResourceLimitError
from .graphs import TemporalGraph

#: Abort pair enumeration past this many pairs (hub nodes are quadratic).
MAX_PAIRS = 100_000_000

DEFAULT_PERCENTAGES = (0.1, 0.2, 0.3, 0.4, 0.5)


@dataclass(frozen=True)
class DeltaDistribution:
    """Multiset of adjacent-pair gaps plus its cumulative curve."""

    deltas: tuple[int, ...]  # sorted ascending
    cumulative: tuple[tuple[int, int], ...]  # (threshold, count <= threshold)

    @classmethod
    def from_deltas(cls, values: Iterable[int]) -> "DeltaDistribution":
        deltas = tuple(sorted(values))
        cumulative = []
        for i, v in enumerate(deltas):
            if i + 1 == len(deltas) or deltas[i + 1] != v:
                cumulative.append((v, i + 1))
        return cls(deltas, tuple(cumulative))

    def total(self) -> int:
        return len(self.deltas)


@dataclass(frozen=True)
class DSchedule:
    """Evaluation thresholds at fixed percentages of the accepted maximum."""

    d_max: int
    points: tuple[int, ...]


def adjacent_deltas(g: TemporalGraph, max_pairs: int = MAX_PAIRS) -> DeltaDistribution:
    """Gap distribution over unordered adjacent interaction pairs.

    Pairs are enumerated per shared node through the incidence lists; a
    pair sharing two endpoints is counted once, at the smaller node id.
    """
    incident: dict[int, list[int]] = {n: [] for n in g.nodes}
    for i, e in enumerate(g.interactions):
        incident[e.source].append(i)
        incident[e.target].append(i)
    budget = sum(len(lst) * (len(lst) - 1) // 2 for lst in incident.values())
    if budget > max_pairs:
        raise ResourceLimitError(
            f"about {budget} adjacent pairs to enumerate (cap {max_pairs}); "
            "slice the graph first"
        )
    interactions = g.interactions
    deltas = []
    for n in g.nodes:
        lst = incident[n]
        for a in range(len(lst)):
            ei = interactions[lst[a]]
            ends_i = (ei.source, ei.target)
            for b in range(a + 1, len(lst)):
                ej = interactions[lst[b]]
                shared_other = (
                    (ei.source != n and ei.source in (ej.source, ej.target) and ei.source < n)
                    or (ei.target != n and ei.target in (ej.source, ej.target) and ei.target < n)
                )
                if shared_other:
                    continue  # both endpoints shared: counted at the smaller node
                deltas.append(abs(ej.time - ei.time))
    return DeltaDistribution.from_deltas(deltas)


def detect_elbow(dist: DeltaDistribution) -> int:
    """Knee of the cumulative curve: the largest meaningful threshold.

    The point farthest (perpendicular) from the chord between the curve's
    endpoints after min-max normalising both axes; ties break toward the
    smaller threshold.
    """
    if dist.total() < 3:
        raise ValueError(
            f"only {dist.total()} gaps; too few to place an elbow, "
            "supply the maximum threshold manually"
        )
    curve = dist.cumulative
    if len(curve) == 1:
        return curve[0][0]
    t_max = curve[-1][0]
    c_max = curve[-1][1]
    best_t = curve[0][0]
    best_dist = -1.0
    for t, c in curve:
        gap = abs(t / t_max - c / c_max)
        if gap > best_dist:
            best_dist = gap
            best_t = t
    return best_t


def derive_schedule(
    d_max: int | float, percentages: Sequence[float] = DEFAULT_PERCENTAGES
) -> DSchedule:
    """Thresholds at the given fractions of d_max, in d_max's unit."""
    if d_max <= 0:
        raise ValueError(f"d_max must be positive, got {d_max}")
    for p in percentages:
        if not 0 < p <= 1:
            raise ValueError(f"percentages must lie in (0, 1], got {p}")
    points = tuple(round(p * d_max) for p in sorted(percentages))
    return DSchedule(d_max=d_max, points=points)
