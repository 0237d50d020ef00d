"""Byte-stable GEXF 1.2 and Graphviz DOT exports of yearly graphs."""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from .errors import ValidationError
from .graph import YearGraph

GEXF_NS = "http://www.gexf.net/1.2draft"
_DOT_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_DOT_NUMERAL = re.compile(r"-?(\.[0-9]+|[0-9]+(\.[0-9]*)?)")


def format_weight(w: float) -> str:
    """Integral weights print without a fractional part; others use repr."""
    if w.is_integer() and abs(w) < 1e15:
        return str(int(w))
    return repr(w)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_id(s: str) -> str:
    if _DOT_ID.fullmatch(s) or _DOT_NUMERAL.fullmatch(s):
        return s
    return _quote(s)


def to_dot(g: YearGraph) -> str:
    lines = [f"digraph {_quote(str(g.year))} {{"]
    for v in g.nodes:
        lines.append(f"  {_dot_id(v)} [label={_quote(v)}];")
    for s, t, w in g.edges:
        lines.append(f"  {_dot_id(s)} -> {_dot_id(t)} [weight={_dot_id(format_weight(w))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_gexf(g: YearGraph) -> str:
    root = ET.Element("gexf", {"xmlns": GEXF_NS, "version": "1.2"})
    meta = ET.SubElement(root, "meta")
    ET.SubElement(meta, "creator").text = "cpis_netlab"
    ET.SubElement(meta, "description").text = f"investment network {g.year}"
    graph = ET.SubElement(root, "graph", {"mode": "static", "defaultedgetype": "directed"})
    nodes = ET.SubElement(graph, "nodes")
    for v in g.nodes:
        ET.SubElement(nodes, "node", {"id": v, "label": v})
    edges = ET.SubElement(graph, "edges")
    for i, (s, t, w) in enumerate(g.edges):
        ET.SubElement(edges, "edge", {"id": str(i), "source": s, "target": t, "weight": format_weight(w)})
    ET.indent(root, space="  ")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def export_graph(g: YearGraph, fmt: str) -> bytes:
    """Serialize ``g`` as ``"gexf"`` or ``"dot"`` (UTF-8 bytes)."""
    fmt = fmt.lower()
    if fmt == "dot":
        return to_dot(g).encode("utf-8")
    if fmt == "gexf":
        return to_gexf(g).encode("utf-8")
    raise ValidationError(f"unknown export format {fmt!r}; expected gexf or dot")
