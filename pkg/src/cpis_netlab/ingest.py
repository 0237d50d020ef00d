"""CSV ingestion, dataset assembly and on-disk persistence.

Positions CSV: ``source,target,year,amount_usd_millions``.
Economic CSV: ``country,indicator,year,value`` with indicator in E1..E8.

A saved dataset directory holds ``manifest.json``, one ``edges_<year>.csv``
per year and ``econ.csv``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import re
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, NamedTuple, Tuple, Union

from .codebook import ECON_CODES
from .correlation import IndicatorSeries
from .errors import DatasetFormatError, ValidationError
from .graph import CountryCode, YearGraph, build_graph, country_code

log = logging.getLogger(__name__)

POSITIONS_HEADER = ("source", "target", "year", "amount_usd_millions")
ECON_HEADER = ("country", "indicator", "year", "value")
EDGES_HEADER = ("source", "target", "amount_usd_millions")
FORMAT_VERSION = 1
MANIFEST = "manifest.json"
ECON_FILE = "econ.csv"

Source = Union[bytes, str]


class PositionRecord(NamedTuple):
    source: CountryCode
    target: CountryCode
    year: int
    weight: float


class SkippedRow(NamedTuple):
    line: int
    reason: str


@dataclass(frozen=True)
class PositionsParse:
    records: Tuple[PositionRecord, ...]
    skipped: Tuple[SkippedRow, ...] = ()

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)


def _text(data: Source) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8-sig")
    return data.lstrip("﻿")


def _rows(data: Source, expected: Tuple[str, ...]):
    """Yield (line_number, row) after validating the header; ``None`` for empty input."""
    reader = csv.reader(io.StringIO(_text(data), newline=""))
    header = next(reader, None)
    if header is None:
        return
    if tuple(h.strip().lower() for h in header) != expected:
        raise ValidationError(
            f"malformed header {','.join(header)!r}; expected columns: {','.join(expected)}"
        )
    for row in reader:
        if not row or all(not cell.strip() for cell in row):
            continue
        yield reader.line_num, [cell.strip() for cell in row]


def _year(text: str, line: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValidationError(f"line {line}: unparseable year {text!r}") from None


def _number(text: str):
    try:
        value = float(text)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def parse_positions_csv(data: Source) -> PositionsParse:
    """Parse bilateral positions, skipping rows that cannot become edges.

    Missing, non-numeric (e.g. the confidential marker ``C``), zero and
    negative amounts are skipped and reported, as are self-positions and
    rows with the wrong number of fields.

    Raises:
        ValidationError: bad header, or an unparseable year (with line number).
    """
    records, skipped = [], []
    for line, row in _rows(data, POSITIONS_HEADER):
        if len(row) != len(POSITIONS_HEADER):
            skipped.append(SkippedRow(line, f"expected 4 fields, got {len(row)}"))
            continue
        src, dst, year_text, amount_text = row
        year = _year(year_text, line)
        if not src or not dst:
            skipped.append(SkippedRow(line, "missing country code"))
            continue
        src, dst = country_code(src), country_code(dst)
        if src == dst:
            skipped.append(SkippedRow(line, "self-position"))
            continue
        amount = _number(amount_text)
        if amount is None:
            skipped.append(SkippedRow(line, f"non-numeric amount {amount_text!r}"))
        elif amount <= 0:
            skipped.append(SkippedRow(line, f"non-positive amount {amount_text}"))
        else:
            records.append(PositionRecord(src, dst, year, amount))
    if skipped:
        log.info("positions: skipped %d row(s)", len(skipped))
    return PositionsParse(tuple(records), tuple(skipped))


def parse_econ_csv(data: Source) -> List[IndicatorSeries]:
    """Parse economic indicators into one series per (country, indicator).

    Non-numeric values are dropped (the year is then missing from the series).

    Raises:
        ValidationError: bad header, unknown indicator code, unparseable year,
            or a repeated (country, indicator, year) triple.
    """
    table: Dict[Tuple[str, str], Dict[int, float]] = defaultdict(dict)
    seen = set()
    dropped = 0
    for line, row in _rows(data, ECON_HEADER):
        if len(row) != len(ECON_HEADER):
            raise ValidationError(f"line {line}: expected 4 fields, got {len(row)}")
        country, code, year_text, value_text = row
        country, code = country_code(country), code.upper()
        if code not in ECON_CODES:
            raise ValidationError(
                f"line {line}: unknown indicator {code!r}; valid codes: {', '.join(ECON_CODES)}"
            )
        year = _year(year_text, line)
        key = (country, code, year)
        if key in seen:
            raise ValidationError(f"line {line}: duplicate entry for {country}/{code}/{year}")
        seen.add(key)
        value = _number(value_text)
        if value is None:
            dropped += 1
            continue
        table[country, code][year] = value
    if dropped:
        log.info("econ: dropped %d non-numeric value(s)", dropped)
    order = {c: i for i, c in enumerate(ECON_CODES)}
    return [
        IndicatorSeries.from_mapping(c, k, table[c, k])
        for c, k in sorted(table, key=lambda ck: (ck[0], order[ck[1]]))
    ]


@dataclass(frozen=True)
class Dataset:
    countries: Tuple[CountryCode, ...]
    years: Tuple[int, ...]
    graphs: Dict[int, YearGraph]
    econ: Dict[Tuple[CountryCode, str], IndicatorSeries] = field(default_factory=dict)
    provenance: str = ""
    min_edge_weight: float = 0.0

    def __post_init__(self):
        if tuple(sorted(self.graphs)) != self.years:
            raise ValidationError("graph years do not match the declared year list")
        for year, g in self.graphs.items():
            if g.nodes != self.countries:
                raise ValidationError(f"graph {year} node set differs from the country list")
        for (country, _), s in self.econ.items():
            if country not in self.countries or s.country != country:
                raise ValidationError(f"econ series for unknown country {country}")
            if not s.observations:
                raise ValidationError(f"econ series {country}/{s.indicator} has no observations")

    def graph(self, year: int) -> YearGraph:
        try:
            return self.graphs[year]
        except KeyError:
            raise ValidationError(f"no graph for year {year}") from None

    def econ_series(self, country: CountryCode) -> List[IndicatorSeries]:
        return [self.econ[country, c] for c in ECON_CODES if (country, c) in self.econ]


def build_dataset(
    positions: Iterable[PositionRecord],
    econ: Iterable[IndicatorSeries] = (),
    min_edge_weight: float = 0.0,
    provenance: str = "",
) -> Dataset:
    """Assemble yearly graphs and econ series into a :class:`Dataset`.

    Duplicate bilateral records are summed first; an aggregated edge is kept
    iff its weight exceeds ``min_edge_weight``.  Econ series without any
    observation are dropped.  The country list is the
    sorted union of every code seen in either input.
    """
    min_edge_weight = float(min_edge_weight)
    if not min_edge_weight >= 0:
        raise ValidationError("min_edge_weight must be >= 0")
    by_year: Dict[int, Dict[Tuple[str, str], List[float]]] = defaultdict(lambda: defaultdict(list))
    codes = set()
    for rec in positions:
        by_year[int(rec.year)][rec.source, rec.target].append(float(rec.weight))
        codes.update((rec.source, rec.target))

    econ_map = {}
    for s in econ:
        if not s.observations:
            continue
        key = (s.country, s.indicator)
        if key in econ_map:
            raise ValidationError(f"duplicate econ series {s.country}/{s.indicator}")
        econ_map[key] = s
        codes.add(s.country)

    countries = tuple(sorted(codes))
    graphs = {}
    for year in sorted(by_year):
        edges = []
        for (src, dst), parts in by_year[year].items():
            w = math.fsum(parts)
            if w > min_edge_weight:
                edges.append((src, dst, w))
        graphs[year] = build_graph(year, countries, edges)
    econ_sorted = {k: econ_map[k] for k in sorted(econ_map, key=lambda k: (k[0], ECON_CODES.index(k[1])))}
    return Dataset(countries, tuple(sorted(graphs)), graphs, econ_sorted, provenance, min_edge_weight)


# -- persistence ------------------------------------------------------------


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def save_dataset(ds: Dataset, directory: Union[str, os.PathLike]) -> Path:
    """Write ``ds`` to ``directory``; floats use shortest round-trip repr."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for stale in out.glob("edges_*.csv"):
        stale.unlink()
    manifest = {
        "format_version": FORMAT_VERSION,
        "countries": list(ds.countries),
        "years": list(ds.years),
        "min_edge_weight": ds.min_edge_weight,
        "provenance": ds.provenance,
    }
    (out / MANIFEST).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    for year in ds.years:
        rows = [(s, t, repr(w)) for s, t, w in ds.graphs[year].edges]
        _write_csv(out / f"edges_{year}.csv", EDGES_HEADER, rows)
    econ_rows = [
        (s.country, s.indicator, y, repr(v)) for s in ds.econ.values() for y, v in s.observations
    ]
    _write_csv(out / ECON_FILE, ECON_HEADER, econ_rows)
    return out


def _read_manifest(root: Path) -> dict:
    path = root / MANIFEST
    if not path.is_file():
        raise DatasetFormatError(f"missing {MANIFEST} in {root}")
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DatasetFormatError(f"corrupt {MANIFEST}: {exc}") from None
    required = {"countries", "years", "min_edge_weight", "provenance", "format_version"}
    if not isinstance(manifest, dict) or not required <= manifest.keys():
        raise DatasetFormatError(f"{MANIFEST} must contain keys: {', '.join(sorted(required))}")
    if manifest["format_version"] != FORMAT_VERSION:
        raise DatasetFormatError(f"unsupported format_version {manifest['format_version']!r}")
    return manifest


def load_dataset(directory: Union[str, os.PathLike]) -> Dataset:
    """Read a directory written by :func:`save_dataset`.

    Raises:
        FileNotFoundError: ``directory`` does not exist.
        DatasetFormatError: missing/corrupt manifest, or files that disagree
            with it (the message names the year or code involved).
    """
    root = Path(directory)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset directory not found: {root}")
    manifest = _read_manifest(root)
    countries = tuple(manifest["countries"])
    if not all(isinstance(c, str) and c and c == c.strip().upper() for c in countries) or list(
        countries
    ) != sorted(set(countries)):
        raise DatasetFormatError("manifest countries must be unique uppercase codes in sorted order")
    years = tuple(int(y) for y in manifest["years"])
    if list(years) != sorted(set(years)):
        raise DatasetFormatError("manifest years must be strictly increasing")

    on_disk = set()
    for p in root.glob("edges_*.csv"):
        m = re.fullmatch(r"edges_(-?\d+)\.csv", p.name)
        if m:
            on_disk.add(int(m.group(1)))
    missing = sorted(set(years) - on_disk)
    extra = sorted(on_disk - set(years))
    if missing:
        raise DatasetFormatError(f"edges file missing for year {missing[0]}")
    if extra:
        raise DatasetFormatError(f"edges file for year {extra[0]} is not listed in {MANIFEST}")

    graphs = {}
    for year in years:
        edges = []
        for line, row in _rows((root / f"edges_{year}.csv").read_bytes(), EDGES_HEADER):
            if len(row) != 3:
                raise DatasetFormatError(f"edges_{year}.csv line {line}: expected 3 fields")
            edges.append((row[0], row[1], float(row[2])))
        try:
            graphs[year] = build_graph(year, countries, edges)
        except ValidationError as exc:
            raise DatasetFormatError(f"edges_{year}.csv: {exc}") from None

    econ_path = root / ECON_FILE
    if not econ_path.is_file():
        raise DatasetFormatError(f"missing {ECON_FILE} in {root}")
    econ = {}
    for s in parse_econ_csv(econ_path.read_bytes()):
        if s.country not in countries:
            raise DatasetFormatError(f"{ECON_FILE} mentions country {s.country} absent from {MANIFEST}")
        econ[s.country, s.indicator] = s
    return Dataset(
        countries,
        years,
        graphs,
        econ,
        provenance=str(manifest["provenance"]),
        min_edge_weight=float(manifest["min_edge_weight"]),
    )
