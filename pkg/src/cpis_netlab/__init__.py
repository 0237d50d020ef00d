"""Investment-network indicators, connectivity tiers and indicator correlations."""

from .codebook import ECON_CODEBOOK, ECON_CODES, NETWORK_CODEBOOK, NETWORK_CODES
from .correlation import (
    CellClass,
    CorrelationMatrix,
    IndicatorSeries,
    align_series,
    correlation_matrix,
    pearson,
    pearson_centered,
)
from .errors import NetlabError, ValidationError
from .export import export_graph
from .graph import YearGraph, build_graph, shortest_paths
from .ingest import Dataset, build_dataset, load_dataset, parse_econ_csv, parse_positions_csv, save_dataset
from .metrics import NodeIndicators, graph_indicators, node_indicator_vector
from .report import ReportConfig, render_matrix, render_tier_table
from .tiering import Tier, TierThresholds, assign_tier, classify_all

__version__ = "0.1.0"
