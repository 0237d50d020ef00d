"""Pearson correlation between network-index and economic-indicator series."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .codebook import ECON_CODES, NETWORK_CODES
from .errors import InsufficientOverlapError, ValidationError

DEFAULT_THRESHOLD = 0.5


@dataclass(frozen=True)
class IndicatorSeries:
    """Yearly observations of one indicator for one country.

    ``observations`` holds (year, value) pairs in strictly increasing year
    order; absent years are simply missing.
    """

    country: str
    indicator: str
    observations: Tuple[Tuple[int, float], ...] = ()

    def __post_init__(self):
        years = [y for y, _ in self.observations]
        if any(b <= a for a, b in zip(years, years[1:])):
            raise ValidationError(
                f"series {self.country}/{self.indicator}: years must be strictly increasing"
            )

    @classmethod
    def from_mapping(cls, country: str, indicator: str, values: Mapping[int, Optional[float]]):
        """Build from ``{year: value}``, dropping ``None`` values."""
        obs = tuple(sorted((int(y), float(v)) for y, v in values.items() if v is not None))
        return cls(country, indicator, obs)

    @property
    def years(self) -> Tuple[int, ...]:
        return tuple(y for y, _ in self.observations)

    def as_dict(self) -> Dict[int, float]:
        return dict(self.observations)

    def __len__(self) -> int:
        return len(self.observations)


def _check_pair(x: Sequence[float], y: Sequence[float]) -> int:
    if len(x) != len(y):
        raise ValidationError(f"series lengths differ: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise ValidationError("pearson needs at least 2 paired observations")
    if not all(math.isfinite(v) for v in (*x, *y)):
        raise ValidationError("pearson inputs must be finite")
    return len(x)


def _as_scaled_ints(values: Sequence[float]) -> List[int]:
    # every float is m / 2**k; put them all over the largest 2**k
    ratios = [float(v).as_integer_ratio() for v in values]
    den = max(d for _, d in ratios)
    return [m * (den // d) for m, d in ratios]


def pearson(x: Sequence[float], y: Sequence[float]) -> Optional[float]:
    """Sample correlation coefficient from raw sums.

    Evaluates ``(n*Sxy - Sx*Sy) / sqrt((n*Sxx - Sx^2)(n*Syy - Sy^2))`` in exact
    integer arithmetic, so the only rounding is in the final square root.
    Returns ``None`` when either series is constant.

    >>> pearson([1, 2, 3], [1, 3, 2])
    0.5
    """
    n = _check_pair(x, y)
    xi, yi = _as_scaled_ints(x), _as_scaled_ints(y)
    sx, sy = sum(xi), sum(yi)
    num = n * sum(a * b for a, b in zip(xi, yi)) - sx * sy
    dx = n * sum(a * a for a in xi) - sx * sx
    dy = n * sum(b * b for b in yi) - sy * sy
    if dx == 0 or dy == 0:
        return None
    # int / int is correctly rounded, and num^2 <= dx*dy exactly
    r = math.sqrt(num * num / (dx * dy))
    return math.copysign(r, num) if num else 0.0


def pearson_centered(x: Sequence[float], y: Sequence[float]) -> Optional[float]:
    """Sample correlation from deviations about the means (floating point)."""
    n = _check_pair(x, y)
    mx, my = math.fsum(x) / n, math.fsum(y) / n
    dx = [a - mx for a in x]
    dy = [b - my for b in y]
    sxx = math.fsum(a * a for a in dx)
    syy = math.fsum(b * b for b in dy)
    if sxx == 0 or syy == 0:
        return None
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def align_series(a: IndicatorSeries, b: IndicatorSeries) -> Tuple[List[float], List[float]]:
    """Pair up values for the years both series observe, ascending by year."""
    av, bv = a.as_dict(), b.as_dict()
    common = sorted(av.keys() & bv.keys())
    if len(common) < 2:
        raise InsufficientOverlapError(len(common))
    return [av[y] for y in common], [bv[y] for y in common]


class CellClass(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    WEAK = "weak"
    UNDEFINED = "undefined"


def classify(r: Optional[float], threshold: float) -> CellClass:
    if r is None:
        return CellClass.UNDEFINED
    if abs(r) < threshold or r == 0:
        return CellClass.WEAK
    return CellClass.POSITIVE if r > 0 else CellClass.NEGATIVE


@dataclass(frozen=True)
class CorrelationCell:
    r: Optional[float]
    n_obs: int
    cls: CellClass
    reason: Optional[str] = None


@dataclass(frozen=True)
class CorrelationMatrix:
    """Per-country grid: rows N1..N11, columns E1..E8."""

    country: str
    threshold: float
    cells: Tuple[Tuple[CorrelationCell, ...], ...]
    rows: Tuple[str, ...] = NETWORK_CODES
    cols: Tuple[str, ...] = ECON_CODES

    def cell(self, row: str, col: str) -> CorrelationCell:
        return self.cells[self.rows.index(row)][self.cols.index(col)]

    def __iter__(self):
        for code, cells in zip(self.rows, self.cells):
            for col, c in zip(self.cols, cells):
                yield code, col, c


def _check_threshold(threshold: float) -> float:
    threshold = float(threshold)
    if not 0.0 <= threshold <= 1.0:
        raise ValidationError(f"threshold must lie in [0, 1], got {threshold}")
    return threshold


def _index(series: Iterable[IndicatorSeries], country: str, codes: Tuple[str, ...]) -> dict:
    out = {}
    for s in series:
        if s.country != country:
            raise ValidationError(f"series {s.indicator} belongs to {s.country}, not {country}")
        if s.indicator not in codes:
            raise ValidationError(f"unexpected indicator {s.indicator}; valid: {', '.join(codes)}")
        if s.indicator in out:
            raise ValidationError(f"indicator {s.indicator} supplied twice for {country}")
        out[s.indicator] = s
    return out


def correlation_cell(a: Optional[IndicatorSeries], b: Optional[IndicatorSeries],
                     threshold: float) -> CorrelationCell:
    if a is None or b is None:
        return CorrelationCell(None, 0, CellClass.UNDEFINED, "missing series")
    try:
        x, y = align_series(a, b)
    except InsufficientOverlapError as exc:
        return CorrelationCell(None, exc.common, CellClass.UNDEFINED, "insufficient overlap")
    r = pearson(x, y)
    reason = "zero variance" if r is None else None
    return CorrelationCell(r, len(x), classify(r, threshold), reason)


def correlation_matrix(
    country: str,
    network: Iterable[IndicatorSeries],
    economic: Iterable[IndicatorSeries],
    threshold: float = DEFAULT_THRESHOLD,
) -> CorrelationMatrix:
    """Correlate every network index with every economic indicator.

    Cells that cannot be computed (absent series, fewer than two shared
    years, a constant series) are marked UNDEFINED with a reason; the
    matrix is always produced.
    """
    threshold = _check_threshold(threshold)
    net = _index(network, country, NETWORK_CODES)
    econ = _index(economic, country, ECON_CODES)
    cells = tuple(
        tuple(correlation_cell(net.get(n), econ.get(e), threshold) for e in ECON_CODES)
        for n in NETWORK_CODES
    )
    return CorrelationMatrix(country, threshold, cells)


def matrix_from_values(
    country: str,
    values: Mapping[Tuple[str, str], Optional[float]],
    threshold: float = DEFAULT_THRESHOLD,
    n_obs: int = 0,
) -> CorrelationMatrix:
    """Wrap precomputed coefficients (e.g. published tables) as a matrix."""
    threshold = _check_threshold(threshold)
    cells = []
    for n in NETWORK_CODES:
        row = []
        for e in ECON_CODES:
            r = values.get((n, e))
            if r is not None and not -1.0 <= r <= 1.0:
                raise ValidationError(f"cell ({n}, {e}) = {r} outside [-1, 1]")
            reason = "no value" if r is None else None
            row.append(CorrelationCell(r, n_obs, classify(r, threshold), reason))
        cells.append(tuple(row))
    return CorrelationMatrix(country, threshold, tuple(cells))
