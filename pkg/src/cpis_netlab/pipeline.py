"""Dataset-level glue: yearly indicators, per-country series and matrices."""

from __future__ import annotations

from typing import Dict, List, Optional

from .codebook import NETWORK_CODES
from .correlation import DEFAULT_THRESHOLD, CorrelationMatrix, IndicatorSeries, correlation_matrix
from .errors import UnknownNodeError
from .metrics import NodeIndicators, graph_indicators, node_indicator_vector


def compute_indicators(dataset) -> Dict[int, Dict[str, NodeIndicators]]:
    """``{year: {country: NodeIndicators}}`` for the whole dataset."""
    return {year: graph_indicators(dataset.graphs[year]) for year in dataset.years}


def network_series(dataset, country: str, indicators=None) -> List[IndicatorSeries]:
    """N1..N11 series for one country; undefined yearly values become gaps."""
    if country not in dataset.countries:
        raise UnknownNodeError(country)
    values: Dict[str, Dict[int, Optional[float]]] = {code: {} for code in NETWORK_CODES}
    for year in dataset.years:
        if indicators is None:
            ind = node_indicator_vector(dataset.graphs[year], country)
        else:
            ind = indicators[year][country]
        for code, v in ind.by_code().items():
            values[code][year] = v
    return [IndicatorSeries.from_mapping(country, code, values[code]) for code in NETWORK_CODES]


def country_correlation(
    dataset, country: str, threshold: float = DEFAULT_THRESHOLD, indicators=None
) -> CorrelationMatrix:
    net = network_series(dataset, country, indicators)
    return correlation_matrix(country, net, dataset.econ_series(country), threshold)
