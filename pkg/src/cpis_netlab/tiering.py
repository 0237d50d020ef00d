"""Connectivity tiers from average closeness (mean hop distance) over years."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import ValidationError
from .metrics import closeness_mean_distance


class Tier(enum.IntEnum):
    TIER1 = 1
    TIER2 = 2
    TIER3 = 3

    @property
    def label(self) -> str:
        return f"Tier {self.value}"


@dataclass(frozen=True)
class TierThresholds:
    """Upper bounds on average closeness for Tier 1 and Tier 2 (inclusive)."""

    t1_max: float = 1.05
    t2_max: float = 1.20

    def __post_init__(self):
        if not 1.0 <= self.t1_max < self.t2_max:
            raise ValidationError(
                f"thresholds must satisfy 1 <= t1_max < t2_max, got {self.t1_max}, {self.t2_max}"
            )


@dataclass(frozen=True)
class TierAssignment:
    country: str
    avg_closeness: float
    tier: Tier
    years_counted: int


@dataclass(frozen=True)
class TierReport:
    thresholds: TierThresholds
    assignments: Tuple[TierAssignment, ...]
    warnings: Tuple[Tuple[str, str], ...] = ()

    @property
    def counts(self) -> Dict[Tier, int]:
        out = dict.fromkeys(Tier, 0)
        for a in self.assignments:
            out[a.tier] += 1
        return out

    def members(self, tier: Tier) -> List[TierAssignment]:
        return [a for a in self.assignments if a.tier is tier]


def average_closeness(values: Iterable[Optional[float]]) -> Tuple[float, int]:
    """Mean over the defined yearly values, with the number of years used.

    Raises:
        ValidationError: no year has a defined value.
    """
    defined = [v for v in values if v is not None]
    if not defined:
        raise ValidationError("no defined closeness value in any year")
    return math.fsum(defined) / len(defined), len(defined)


def assign_tier(avg: float, th: TierThresholds = TierThresholds()) -> Tier:
    """Tier 1 up to ``t1_max``, Tier 2 up to ``t2_max``, Tier 3 above."""
    if avg < 1.0:
        raise ValidationError(f"average closeness {avg} is below 1, impossible for hop distances")
    if avg <= th.t1_max:
        return Tier.TIER1
    if avg <= th.t2_max:
        return Tier.TIER2
    return Tier.TIER3


def classify_all(dataset, th: TierThresholds = TierThresholds()) -> TierReport:
    """Tier every country of a :class:`~cpis_netlab.ingest.Dataset`.

    Countries that never reach another node in any year are reported in
    ``warnings`` and left out of the assignments.
    """
    assignments, warnings = [], []
    for country in dataset.countries:
        yearly = [closeness_mean_distance(dataset.graphs[y], country) for y in dataset.years]
        try:
            avg, used = average_closeness(yearly)
        except ValidationError as exc:
            warnings.append((country, str(exc)))
            continue
        assignments.append(TierAssignment(country, avg, assign_tier(avg, th), used))
    assignments.sort(key=lambda a: (a.tier, a.avg_closeness, a.country))
    return TierReport(th, tuple(assignments), tuple(warnings))
