"""Command-line entry point.

Exit status: 0 on success, 1 on validation errors (including bad usage),
2 on I/O errors.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import asdict
from pathlib import Path
from typing import List, Optional

from .codebook import ECON_CODES, NETWORK_CODES
from .correlation import DEFAULT_THRESHOLD, matrix_from_values
from .errors import NetlabError, ValidationError
from .export import export_graph
from .graph import country_code
from .ingest import build_dataset, load_dataset, parse_econ_csv, parse_positions_csv, save_dataset
from .metrics import graph_indicators, graph_summary
from .pipeline import country_correlation
from .report import (
    ReportConfig,
    indicators_csv,
    indicators_json,
    render_matrix,
    render_tier_table,
    tier_report_json,
)
from .tiering import TierThresholds, classify_all

DATA_ENV = "CPIS_NETLAB_DATA"
log = logging.getLogger("cpis_netlab")


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _out(text: str) -> None:
    sys.stdout.write(text)


def _data(args):
    path = args.data or os.environ.get(DATA_ENV)
    if not path:
        raise UsageError(f"--data is required (or set {DATA_ENV})")
    return load_dataset(path)


def cmd_ingest(args) -> None:
    parsed = parse_positions_csv(Path(args.positions).read_bytes())
    for row in parsed.skipped:
        log.warning("positions line %d skipped: %s", row.line, row.reason)
    econ = parse_econ_csv(Path(args.econ).read_bytes()) if args.econ else []
    provenance = args.provenance or f"positions={Path(args.positions).name}" + (
        f"; econ={Path(args.econ).name}" if args.econ else ""
    )
    ds = build_dataset(parsed.records, econ, args.min_weight, provenance)
    save_dataset(ds, args.out)
    summary = {
        "countries": len(ds.countries),
        "years": list(ds.years),
        "edges": sum(len(g.edges) for g in ds.graphs.values()),
        "econ_series": len(ds.econ),
        "skipped_rows": len(parsed.skipped),
        "out": str(args.out),
    }
    _out(json.dumps(summary, sort_keys=True) + "\n")


def cmd_metrics(args) -> None:
    ds = _data(args)
    years = [args.year] if args.year is not None else list(ds.years)
    for y in years:
        ds.graph(y)
    if args.country is not None and args.country not in ds.countries:
        raise ValidationError(f"unknown country code {args.country!r}")
    if args.graph:
        rows = [asdict(graph_summary(ds.graphs[y])) for y in years]
        _out(json.dumps(rows, indent=2, sort_keys=True) + "\n")
        return
    rows = []
    for y in years:
        for c, ind in graph_indicators(ds.graphs[y]).items():
            if args.country is None or c == args.country:
                rows.append(ind)
    _out(indicators_json(rows) if args.format == "json" else indicators_csv(rows))


def cmd_tiers(args) -> None:
    ds = _data(args)
    report = classify_all(ds, TierThresholds(args.t1, args.t2))
    for country, reason in report.warnings:
        log.warning("%s not tiered: %s", country, reason)
    _out(tier_report_json(report) if args.format == "json" else render_tier_table(report))


def _matrix(args):
    if getattr(args, "values", None):
        return read_values_matrix(Path(args.values).read_bytes(), args.country, args.threshold)
    ds = _data(args)
    if args.country not in ds.countries:
        raise ValidationError(f"unknown country code {args.country!r}")
    return country_correlation(ds, args.country, args.threshold)


def read_values_matrix(data: bytes, country: str, threshold: float, n_obs: int = 14):
    """Matrix from a ``row,col,value`` CSV of precomputed coefficients."""
    reader = csv.DictReader(io.StringIO(data.decode("utf-8-sig")))
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["row", "col", "value"]:
        raise ValidationError("values file header must be row,col,value")
    values = {}
    for rec in reader:
        key = (rec["row"].strip().upper(), rec["col"].strip().upper())
        if key[0] not in NETWORK_CODES or key[1] not in ECON_CODES:
            raise ValidationError(f"values file: unknown cell {key}")
        if key in values:
            raise ValidationError(f"values file: duplicate cell {key}")
        text = rec["value"].strip()
        values[key] = float(text) if text else None
    return matrix_from_values(country, values, threshold, n_obs)


def cmd_correlate(args) -> None:
    m = _matrix(args)
    cfg = ReportConfig(args.threshold, args.decimals, frozenset({args.format}))
    _out(render_matrix(m, cfg)[args.format])


def cmd_export(args) -> None:
    ds = _data(args)
    _out(export_graph(ds.graph(args.year), args.format).decode("utf-8"))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cpis-netlab", description="Investment-network indicators, tiers and correlations.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def data_arg(sp):
        sp.add_argument("--data", help=f"dataset directory (default: ${DATA_ENV})")

    sp = sub.add_parser("ingest", help="parse CSV extracts into a dataset directory")
    sp.add_argument("--positions", required=True)
    sp.add_argument("--econ")
    sp.add_argument("--out", required=True)
    sp.add_argument("--min-weight", type=float, default=0.0)
    sp.add_argument("--provenance")
    sp.set_defaults(func=cmd_ingest)

    sp = sub.add_parser("metrics", help="node indicators N1-N11")
    data_arg(sp)
    sp.add_argument("--year", type=int)
    sp.add_argument("--country", type=country_code)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--graph", action="store_true", help="graph-level summary instead")
    sp.set_defaults(func=cmd_metrics)

    sp = sub.add_parser("tiers", help="connectivity tiers from average closeness")
    data_arg(sp)
    sp.add_argument("--t1", type=float, default=1.05)
    sp.add_argument("--t2", type=float, default=1.20)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_tiers)

    for name, fmts, default, func in (
        ("correlate", ("csv", "json", "text"), "csv", cmd_correlate),
        ("report", ("html", "text", "csv", "json"), "text", cmd_correlate),
    ):
        sp = sub.add_parser(name, help=f"{name} network indices against economic indicators")
        data_arg(sp)
        sp.add_argument("--country", required=True, type=country_code)
        sp.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
        sp.add_argument("--decimals", type=int, default=3)
        sp.add_argument("--format", choices=fmts, default=default)
        if name == "report":
            sp.add_argument("--values", help="render precomputed row,col,value coefficients")
        sp.set_defaults(func=func)

    sp = sub.add_parser("export", help="export one year's graph as GEXF or DOT")
    data_arg(sp)
    sp.add_argument("--year", type=int, required=True)
    sp.add_argument("--format", choices=("gexf", "dot"), required=True)
    sp.set_defaults(func=cmd_export)
    return p


def cli_main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verbose:
            logging.getLogger().setLevel(logging.INFO)
        args.func(args)
    except NetlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(cli_main())
