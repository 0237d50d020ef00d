"""Indicator codebooks: network indices N1-N11 and economic indicators E1-E8."""

from types import MappingProxyType

NETWORK_CODEBOOK = MappingProxyType({
    "N1": "In-Degree",
    "N2": "Out-Degree",
    "N3": "Degree",
    "N4": "Weighted Degree",
    "N5": "Weighted In-Degree",
    "N6": "Weighted Out-Degree",
    "N7": "Eccentricity",
    "N8": "Closeness Centrality",
    "N9": "Betweenness Centrality",
    "N10": "Clustering Coefficient",
    "N11": "Strength",
})

ECON_CODEBOOK = MappingProxyType({
    "E1": "Gross domestic product, current prices",
    "E2": "Gross domestic product, deflator",
    "E3": "Gross domestic product per capita, current prices",
    "E4": "Gross domestic product based on purchasing-power-parity (PPP) share of world total",
    "E5": "Inflation, average consumer prices",
    "E6": "General government revenue",
    "E7": "General government gross debt",
    "E8": "Current account balance",
})

NETWORK_CODES = tuple(NETWORK_CODEBOOK)
ECON_CODES = tuple(ECON_CODEBOOK)
