"""Text, CSV, JSON and HTML renderings of correlation matrices and tier tables.

Correlation cells show ``|r|`` at a fixed number of decimals with negative
values wrapped in parentheses, e.g. ``0.884`` and ``(0.533)``.  Rounding is
half-even and affects display only.
"""

from __future__ import annotations

import csv
import html
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Dict, FrozenSet, Optional

from .codebook import ECON_CODEBOOK, NETWORK_CODEBOOK
from .correlation import CellClass, CorrelationMatrix
from .errors import ValidationError
from .metrics import NETWORK_FIELDS
from .tiering import Tier, TierReport

UNDEFINED_MARK = "—"
FORMATS = frozenset({"text", "html", "csv", "json"})

CELL_COLORS = {
    CellClass.POSITIVE: "#7ccf7c",
    CellClass.NEGATIVE: "#ec7b7b",
    CellClass.WEAK: "#f3e06a",
    CellClass.UNDEFINED: "#d9d9d9",
}


@dataclass(frozen=True)
class ReportConfig:
    threshold: float = 0.5
    decimals: int = 3
    formats: FrozenSet[str] = frozenset({"text"})

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ValidationError(f"threshold must lie in [0, 1], got {self.threshold}")
        if self.decimals < 1:
            raise ValidationError("decimals must be >= 1")
        unknown = set(self.formats) - FORMATS
        if unknown:
            raise ValidationError(f"unknown format(s): {', '.join(sorted(unknown))}")


def format_r(r: Optional[float], decimals: int = 3) -> str:
    """``0.884`` for positive, ``(0.533)`` for negative, an em dash for undefined."""
    if r is None:
        return UNDEFINED_MARK
    q = Decimal(repr(abs(r))).quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_HALF_EVEN)
    return f"({q})" if r < 0 else str(q)


def _n_obs_note(m: CorrelationMatrix) -> str:
    counts = [c.n_obs for _, _, c in m if c.r is not None]
    if not counts:
        return "pairwise-complete years; no defined cells"
    return f"pairwise-complete years; min {min(counts)}, max {max(counts)}"


def _text(m: CorrelationMatrix, cfg: ReportConfig) -> str:
    width = cfg.decimals + 6
    lines = [
        f"country: {m.country}",
        f"threshold: {m.threshold!r}",
        f"n_obs: {_n_obs_note(m)}",
        "",
        " " * 4 + "".join(f"{c:>{width}}" for c in m.cols),
    ]
    for code, row in zip(m.rows, m.cells):
        lines.append(f"{code:<4}" + "".join(f"{format_r(c.r, cfg.decimals):>{width}}" for c in row))
    return "\n".join(lines) + "\n"


def _csv(m: CorrelationMatrix, cfg: ReportConfig) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", *m.cols])
    for code, row in zip(m.rows, m.cells):
        w.writerow([code, *(format_r(c.r, cfg.decimals) for c in row)])
    return buf.getvalue()


def _json(m: CorrelationMatrix, cfg: ReportConfig) -> str:
    doc = {
        "country": m.country,
        "threshold": m.threshold,
        "decimals": cfg.decimals,
        "n_obs_policy": "pairwise-complete years",
        "rows": list(m.rows),
        "cols": list(m.cols),
        "cells": [
            {
                "row": n,
                "col": e,
                "r": c.r,
                "display": format_r(c.r, cfg.decimals),
                "class": c.cls.value,
                "n_obs": c.n_obs,
                "reason": c.reason,
            }
            for n, e, c in m
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _html(m: CorrelationMatrix, cfg: ReportConfig) -> str:
    esc = html.escape
    style = "\n".join(
        f"td.{cls.value} {{ background: {color}; }}" for cls, color in CELL_COLORS.items()
    )
    head = "".join(f'<th title="{esc(ECON_CODEBOOK[c])}">{c}</th>' for c in m.cols)
    body = []
    for code, row in zip(m.rows, m.cells):
        tds = "".join(
            f'<td class="{c.cls.value}">{esc(format_r(c.r, cfg.decimals))}</td>' for c in row
        )
        body.append(f'<tr><th title="{esc(NETWORK_CODEBOOK[code])}">{code}</th>{tds}</tr>')
    rows = "\n".join(body)
    return f"""<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>Correlation matrix: {esc(m.country)}</title>
<style>
table {{ border-collapse: collapse; font-family: monospace; }}
th, td {{ border: 1px solid #999; padding: 2px 8px; text-align: right; }}
{style}
</style>
</head>
<body>
<h1>Correlation matrix: {esc(m.country)}</h1>
<p>threshold: {m.threshold!r}; n_obs: {esc(_n_obs_note(m))}</p>
<p>red: negative; green: positive; yellow: |r| below threshold; grey: undefined</p>
<table>
<tr><th></th>{head}</tr>
{rows}
</table>
</body>
</html>
"""


_RENDERERS = {"text": _text, "csv": _csv, "json": _json, "html": _html}


def render_matrix(m: CorrelationMatrix, cfg: ReportConfig = ReportConfig()) -> Dict[str, str]:
    """Render ``m`` once per format in ``cfg.formats``."""
    return {fmt: _RENDERERS[fmt](m, cfg) for fmt in sorted(cfg.formats)}


def render_tier_table(report: TierReport) -> str:
    th = report.thresholds
    heads = [
        [Tier.TIER1.label, f"CC <= {th.t1_max!r}"],
        [Tier.TIER2.label, f"CC <= {th.t2_max!r}"],
        [Tier.TIER3.label, f"CC > {th.t2_max!r}"],
    ]
    counts = report.counts
    columns = []
    for tier, head in zip(Tier, heads):
        members = sorted(report.members(tier), key=lambda a: (a.avg_closeness, a.country))
        columns.append(
            head + [f"n = {counts[tier]}"] + [f"{a.country} ({a.avg_closeness:.3f})" for a in members]
        )
    width = max(len(cell) for col in columns for cell in col) + 2
    depth = max(len(col) for col in columns)
    lines = ["Classification based on average closeness centrality", ""]
    for i in range(depth):
        cells = [col[i] if i < len(col) else "" for col in columns]
        lines.append("".join(f"{c:<{width}}" for c in cells).rstrip())
    if report.warnings:
        lines += ["", "untiered:"] + [f"  {c}: {reason}" for c, reason in report.warnings]
    return "\n".join(lines) + "\n"


def tier_report_json(report: TierReport) -> str:
    doc = {
        "thresholds": {"t1_max": report.thresholds.t1_max, "t2_max": report.thresholds.t2_max},
        "counts": {t.label: n for t, n in report.counts.items()},
        "assignments": [
            {
                "country": a.country,
                "avg_closeness": a.avg_closeness,
                "tier": a.tier.value,
                "years_counted": a.years_counted,
            }
            for a in report.assignments
        ],
        "warnings": [{"country": c, "reason": r} for c, r in report.warnings],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _cell(v) -> str:
    return "" if v is None else repr(v)


def indicators_csv(rows) -> str:
    """CSV of NodeIndicators; undefined values are empty cells."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["year", "country", *NETWORK_FIELDS])
    for ind in rows:
        w.writerow([ind.year, ind.country, *(_cell(getattr(ind, f)) for f in NETWORK_FIELDS)])
    return buf.getvalue()


def indicators_json(rows) -> str:
    return json.dumps([ind.as_dict() for ind in rows], indent=2, sort_keys=True) + "\n"
