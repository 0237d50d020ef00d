"""Immutable yearly investment graphs with degree and hop-distance primitives.

Nodes are country codes kept in lexicographic order; edges are directed
positions in USD millions.  Distances are unweighted hop counts.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .errors import SelfLoopError, UnknownNodeError, ValidationError

CountryCode = str
Edge = Tuple[CountryCode, CountryCode, float]

#: Marker stored in a :class:`DistanceMatrix` for pairs with no directed path.
UNREACHABLE = None


def country_code(raw: str) -> CountryCode:
    """Normalize a raw token to a country code (stripped, uppercase)."""
    code = str(raw).strip().upper()
    if not code:
        raise ValidationError("country code must be non-empty")
    return code


class FlowRole(enum.Enum):
    SOURCE = "source"
    SINK = "sink"
    INTERMEDIATE = "intermediate"
    ISOLATED = "isolated"


@dataclass(frozen=True)
class YearGraph:
    """Directed weighted snapshot for one year.

    Use :func:`build_graph` to construct one; the constructor trusts its
    arguments to already be canonical.
    """

    year: int
    nodes: Tuple[CountryCode, ...]
    edges: Tuple[Edge, ...]
    _succ: dict = field(init=False, repr=False, compare=False)
    _pred: dict = field(init=False, repr=False, compare=False)
    _nbrs: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        succ = {v: {} for v in self.nodes}
        pred = {v: {} for v in self.nodes}
        for s, t, w in self.edges:
            succ[s][t] = w
            pred[t][s] = w
        object.__setattr__(self, "_succ", succ)
        object.__setattr__(self, "_pred", pred)
        object.__setattr__(self, "_nbrs", {v: frozenset(succ[v]) | frozenset(pred[v]) for v in self.nodes})

    def __contains__(self, v: object) -> bool:
        return v in self._succ

    def __len__(self) -> int:
        return len(self.nodes)

    def _check(self, v: CountryCode) -> None:
        if v not in self._succ:
            raise UnknownNodeError(v)

    def successors(self, v: CountryCode) -> Tuple[CountryCode, ...]:
        self._check(v)
        return tuple(self._succ[v])

    def predecessors(self, v: CountryCode) -> Tuple[CountryCode, ...]:
        self._check(v)
        return tuple(self._pred[v])

    def has_edge(self, source: CountryCode, target: CountryCode) -> bool:
        return target in self._succ.get(source, ())

    def weight(self, source: CountryCode, target: CountryCode) -> float:
        try:
            return self._succ[source][target]
        except KeyError:
            raise KeyError(f"no edge {source}->{target}") from None

    def neighbors(self, v: CountryCode) -> frozenset:
        """Neighbors in the undirected projection (edge in either direction)."""
        self._check(v)
        return self._nbrs[v]

    @property
    def total_weight(self) -> float:
        return math.fsum(w for _, _, w in self.edges)

    @cached_property
    def distances(self) -> "DistanceMatrix":
        return shortest_paths(self)


def build_graph(
    year: int,
    nodes: Iterable[CountryCode],
    records: Iterable[Tuple[CountryCode, CountryCode, float]],
) -> YearGraph:
    """Build a canonical graph, summing duplicate (source, target) records.

    Raises:
        SelfLoopError: a record has source == target.
        UnknownNodeError: a record endpoint is not in ``nodes``.
        ValidationError: a weight is not a positive finite number, or a node
            code is repeated.
    """
    node_list = [country_code(v) for v in nodes]
    ordered = tuple(sorted(set(node_list)))
    if len(ordered) != len(node_list):
        raise ValidationError("duplicate country code in node list")
    known = set(ordered)

    parts: dict = {}
    for source, target, weight in records:
        source, target = country_code(source), country_code(target)
        if source == target:
            raise SelfLoopError(source, target)
        for code in (source, target):
            if code not in known:
                raise UnknownNodeError(code)
        weight = float(weight)
        if not (math.isfinite(weight) and weight > 0):
            raise ValidationError(f"edge {source}->{target} has non-positive weight {weight!r}")
        parts.setdefault((source, target), []).append(weight)

    # fsum is correctly rounded, so the result does not depend on record order
    edges = tuple((s, t, math.fsum(parts[s, t])) for s, t in sorted(parts))
    return YearGraph(int(year), ordered, edges)


def in_degree(g: YearGraph, v: CountryCode) -> int:
    return len(g.predecessors(v))


def out_degree(g: YearGraph, v: CountryCode) -> int:
    return len(g.successors(v))


def degree(g: YearGraph, v: CountryCode) -> int:
    """Directed degree: in-degree plus out-degree."""
    return in_degree(g, v) + out_degree(g, v)


def weighted_in_degree(g: YearGraph, v: CountryCode) -> float:
    g._check(v)
    return math.fsum(g._pred[v].values())


def weighted_out_degree(g: YearGraph, v: CountryCode) -> float:
    g._check(v)
    return math.fsum(g._succ[v].values())


def weighted_degree(g: YearGraph, v: CountryCode) -> float:
    return weighted_in_degree(g, v) + weighted_out_degree(g, v)


# Strength is the same quantity under another name.
strength = weighted_degree


def classify_flow_role(g: YearGraph, v: CountryCode) -> FlowRole:
    k_in, k_out = in_degree(g, v), out_degree(g, v)
    if k_in == 0 and k_out == 0:
        return FlowRole.ISOLATED
    if k_in == 0:
        return FlowRole.SOURCE
    if k_out == 0:
        return FlowRole.SINK
    return FlowRole.INTERMEDIATE


@dataclass(frozen=True)
class DistanceMatrix:
    """Directed hop distances; ``rows[i][j]`` is None when j is unreachable from i."""

    nodes: Tuple[CountryCode, ...]
    rows: Tuple[Tuple[Optional[int], ...], ...]

    def index(self, v: CountryCode) -> int:
        try:
            return self.nodes.index(v)
        except ValueError:
            raise UnknownNodeError(v) from None

    def __getitem__(self, pair: Tuple[CountryCode, CountryCode]) -> Optional[int]:
        a, b = pair
        return self.rows[self.index(a)][self.index(b)]

    def reachable(self, v: CountryCode) -> Iterator[Tuple[CountryCode, int]]:
        """Yield (target, distance) for every node other than v reachable from v."""
        row = self.rows[self.index(v)]
        for target, d in zip(self.nodes, row):
            if d is not None and target != v:
                yield target, d


def bfs_distances(g: YearGraph, source: CountryCode) -> dict:
    """Hop distances from ``source`` to every reachable node (itself included)."""
    g._check(source)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g._succ[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def shortest_paths(g: YearGraph) -> DistanceMatrix:
    rows = []
    for v in g.nodes:
        dist = bfs_distances(g, v)
        rows.append(tuple(dist.get(t, UNREACHABLE) for t in g.nodes))
    return DistanceMatrix(g.nodes, tuple(rows))


def undirected_edges(g: YearGraph) -> Sequence[Tuple[CountryCode, CountryCode]]:
    """Edges of the undirected projection as sorted (a, b) pairs with a < b."""
    return sorted({tuple(sorted((s, t))) for s, t, _ in g.edges})
