"""Node- and graph-level network indicators.

Conventions:

* Hop distances on directed edges; nodes a vertex cannot reach are left out
  of its closeness and eccentricity instead of counting as infinitely far.
  A vertex that reaches nothing gets ``None`` (undefined), never 0.
* Degree centrality and clustering use the undirected projection, where
  two countries are neighbors if a position exists in either direction.
* Betweenness is directed, unweighted and unnormalized.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Dict, Optional

from . import graph as gc
from .errors import UndefinedMetricError, ValidationError
from .graph import CountryCode, YearGraph

NETWORK_FIELDS = (
    "n1_in_degree",
    "n2_out_degree",
    "n3_degree",
    "n4_weighted_degree",
    "n5_weighted_in",
    "n6_weighted_out",
    "n7_eccentricity",
    "n8_closeness",
    "n9_betweenness",
    "n10_clustering",
    "n11_strength",
)


@dataclass(frozen=True)
class NodeIndicators:
    """The N1..N11 vector of one country in one year; ``None`` marks undefined."""

    country: CountryCode
    year: int
    n1_in_degree: int
    n2_out_degree: int
    n3_degree: int
    n4_weighted_degree: float
    n5_weighted_in: float
    n6_weighted_out: float
    n7_eccentricity: Optional[int]
    n8_closeness: Optional[float]
    n9_betweenness: float
    n10_clustering: float
    n11_strength: float

    def by_code(self) -> Dict[str, Optional[float]]:
        """Map ``N1``..``N11`` to values."""
        return {f"N{i}": getattr(self, name) for i, name in enumerate(NETWORK_FIELDS, 1)}

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class GraphSummary:
    year: int
    n: int
    degree_centralization: Optional[float]
    closeness_centralization: Optional[float]
    global_clustering: Optional[float]
    average_clustering: Optional[float]
    random_expected_clustering: Optional[float]


# -- degree centrality ------------------------------------------------------


def degree_centrality(g: YearGraph, v: CountryCode) -> float:
    """Undirected neighbor count divided by the maximum possible, n - 1."""
    n = len(g)
    if n < 2:
        raise UndefinedMetricError("degree centrality needs at least 2 nodes")
    return len(g.neighbors(v)) / (n - 1)


def degree_centralization(g: YearGraph) -> float:
    """Freeman degree centralization: 0 for regular graphs, 1 for the star."""
    n = len(g)
    if n < 3:
        raise UndefinedMetricError("degree centralization needs at least 3 nodes")
    c = [degree_centrality(g, v) for v in g.nodes]
    top = max(c)
    # the star maximizes the spread: (n - 1) leaves each 1 - 1/(n - 1) below the hub
    return math.fsum(top - ci for ci in c) / (n - 2)


# -- closeness --------------------------------------------------------------


def _reach(g: YearGraph, v: CountryCode):
    dists = [d for _, d in g.distances.reachable(v)]
    return len(dists), sum(dists)


def closeness_reciprocal(g: YearGraph, v: CountryCode) -> Optional[float]:
    """Reachable count over total distance; 1 when everything reachable is adjacent."""
    r, total = _reach(g, v)
    if r == 0:
        return None
    return r / total


def closeness_mean_distance(g: YearGraph, v: CountryCode) -> Optional[float]:
    """Mean hop distance to reachable nodes (N8). Lower means more central."""
    r, total = _reach(g, v)
    if r == 0:
        return None
    return total / r


def closeness_normalized(g: YearGraph, v: CountryCode) -> Optional[float]:
    c = closeness_reciprocal(g, v)
    if c is None:
        return None
    return c / (len(g) - 1)


def closeness_centralization(g: YearGraph) -> float:
    """Freeman closeness centralization over reciprocal closeness values.

    The sum of shortfalls from the most central node is divided by
    ``(n-1)(n-2)/(2n-3)``, the value a symmetric star attains.

    Raises:
        UndefinedMetricError: fewer than 3 nodes, or some node reaches nothing.
    """
    n = len(g)
    if n < 3:
        raise UndefinedMetricError("closeness centralization needs at least 3 nodes")
    c = {v: closeness_reciprocal(g, v) for v in g.nodes}
    missing = [v for v, cv in c.items() if cv is None]
    if missing:
        raise UndefinedMetricError(f"closeness undefined for: {', '.join(missing)}")
    top = max(c.values())
    spread = math.fsum(top - cv for cv in c.values())
    return spread * (2 * n - 3) / ((n - 1) * (n - 2))


def eccentricity(g: YearGraph, v: CountryCode) -> Optional[int]:
    """Largest finite hop distance from v (N7)."""
    dists = [d for _, d in g.distances.reachable(v)]
    return max(dists) if dists else None


# -- betweenness ------------------------------------------------------------


@lru_cache(maxsize=128)
def _betweenness_table(g: YearGraph) -> Dict[CountryCode, float]:
    # Brandes accumulation over BFS shortest-path DAGs
    score = dict.fromkeys(g.nodes, 0.0)
    for s in g.nodes:
        order = []
        preds = {v: [] for v in g.nodes}
        sigma = dict.fromkeys(g.nodes, 0)
        dist = {s: 0}
        sigma[s] = 1
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in g.successors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = dict.fromkeys(g.nodes, 0.0)
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                score[w] += delta[w]
    return score


def betweenness(g: YearGraph, v: CountryCode) -> float:
    """Sum over ordered pairs (s, t) of the share of s->t geodesics through v (N9)."""
    g._check(v)
    return _betweenness_table(g)[v]


# -- clustering -------------------------------------------------------------


def _linked_pairs(g: YearGraph, v: CountryCode):
    nbrs = g.neighbors(v)
    # every linked pair is seen once from each end
    linked = sum(len(g._nbrs[a] & nbrs) for a in nbrs) // 2
    return len(nbrs), linked


def local_clustering(g: YearGraph, v: CountryCode) -> float:
    """Share of v's neighbor pairs that are themselves neighbors (N10)."""
    k, linked = _linked_pairs(g, v)
    if k < 2:
        return 0.0
    return linked / (k * (k - 1) / 2)


def local_clustering_triples(g: YearGraph, v: CountryCode) -> float:
    """Same quantity via closed walks v-j-k-v over the symmetric adjacency."""
    k = len(g.neighbors(v))
    if k < 2:
        return 0.0
    walks = 0
    for j in g.neighbors(v):
        for m in g.neighbors(j):
            if m != v and v in g.neighbors(m):
                walks += 1
    return walks / (k * (k - 1))


def average_clustering(g: YearGraph) -> float:
    if len(g) == 0:
        raise UndefinedMetricError("average clustering of an empty graph")
    return math.fsum(local_clustering(g, v) for v in g.nodes) / len(g)


def global_clustering_triangles(g: YearGraph) -> Optional[float]:
    """Three times the triangle count over the connected-triple count."""
    triples = 0
    closed = 0
    for v in g.nodes:
        k, linked = _linked_pairs(g, v)
        triples += k * (k - 1) // 2
        closed += linked
    if triples == 0:
        return None
    # each triangle is closed at all three of its corners
    return closed / triples


def random_expected_clustering(g: YearGraph) -> float:
    """Configuration-model clustering predicted from the degree moments.

    ``(1/n) * (<k^2> - <k>)^2 / <k>^3`` on the undirected degree sequence.
    """
    n = len(g)
    if n == 0:
        raise UndefinedMetricError("random expected clustering of an empty graph")
    ks = [len(g.neighbors(v)) for v in g.nodes]
    k1 = sum(ks) / n
    if k1 == 0:
        raise UndefinedMetricError("random expected clustering needs mean degree > 0")
    k2 = sum(k * k for k in ks) / n
    return (k2 - k1) ** 2 / (n * k1**3)


# -- assembly ---------------------------------------------------------------


def node_indicator_vector(g: YearGraph, v: CountryCode) -> NodeIndicators:
    n1, n2 = gc.in_degree(g, v), gc.out_degree(g, v)
    w_in, w_out = gc.weighted_in_degree(g, v), gc.weighted_out_degree(g, v)
    return NodeIndicators(
        country=v,
        year=g.year,
        n1_in_degree=n1,
        n2_out_degree=n2,
        n3_degree=n1 + n2,
        n4_weighted_degree=w_in + w_out,
        n5_weighted_in=w_in,
        n6_weighted_out=w_out,
        n7_eccentricity=eccentricity(g, v),
        n8_closeness=closeness_mean_distance(g, v),
        n9_betweenness=betweenness(g, v),
        n10_clustering=local_clustering(g, v),
        n11_strength=gc.strength(g, v),
    )


def graph_indicators(g: YearGraph) -> Dict[CountryCode, NodeIndicators]:
    """Indicator vectors for every node, in canonical node order."""
    return {v: node_indicator_vector(g, v) for v in g.nodes}


def _or_none(fn, g):
    try:
        return fn(g)
    except UndefinedMetricError:
        return None


def graph_summary(g: YearGraph) -> GraphSummary:
    """Graph-level quantities; ones undefined for this graph are ``None``."""
    if len(g) == 0:
        raise ValidationError("cannot summarize an empty graph")
    return GraphSummary(
        year=g.year,
        n=len(g),
        degree_centralization=_or_none(degree_centralization, g),
        closeness_centralization=_or_none(closeness_centralization, g),
        global_clustering=global_clustering_triangles(g),
        average_clustering=average_clustering(g),
        random_expected_clustering=_or_none(random_expected_clustering, g),
    )
