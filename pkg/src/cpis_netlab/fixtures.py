"""Reference roster and a synthetic dataset with designed tier structure.

Running ``python -m cpis_netlab.fixtures OUTDIR`` writes ``positions.csv``
and ``econ.csv`` for the synthetic dataset, ready for ``cpis-netlab ingest``.

The synthetic network makes every Tier 1 country hold positions in all 25
others (mean distance 1.00).  Every other country holds positions in all
Tier 1 countries plus a few peers, so anything it does not hold directly is
two hops away through a Tier 1 hub.  With ``k`` direct holdings out of 25 the
mean distance is ``(50 - k) / 25``; alternating ``k`` between 22 and 23
averages 1.10, and between 17 and 18 averages 1.30.
"""

from __future__ import annotations

import csv
import io
import random
import sys
from pathlib import Path
from typing import Dict, List, Tuple

from .codebook import ECON_CODES
from .correlation import IndicatorSeries
from .ingest import POSITIONS_HEADER, ECON_HEADER, PositionRecord
from .tiering import Tier

# Reference tier membership, keyed by ISO 3166 alpha-3 code.
REFERENCE_ROSTER: Dict[str, Tuple[str, Tier]] = {
    "AUT": ("Austria", Tier.TIER1),
    "LUX": ("Luxembourg", Tier.TIER1),
    "USA": ("United States", Tier.TIER1),
    "DEU": ("Germany", Tier.TIER1),
    "ITA": ("Italy", Tier.TIER1),
    "FRA": ("France", Tier.TIER1),
    "NLD": ("Netherlands", Tier.TIER1),
    "BEL": ("Belgium", Tier.TIER1),
    "IRL": ("Ireland", Tier.TIER1),
    "DNK": ("Denmark", Tier.TIER1),
    "SWE": ("Sweden", Tier.TIER1),
    "CYP": ("Cyprus", Tier.TIER1),
    "JPN": ("Japan", Tier.TIER1),
    "GBR": ("United Kingdom", Tier.TIER2),
    "EST": ("Estonia", Tier.TIER2),
    "CZE": ("Czech Republic", Tier.TIER2),
    "GRC": ("Greece", Tier.TIER2),
    "SVK": ("Slovak Republic", Tier.TIER2),
    "HUN": ("Hungary", Tier.TIER2),
    "FIN": ("Finland", Tier.TIER2),
    "ESP": ("Spain", Tier.TIER2),
    "PRT": ("Portugal", Tier.TIER2),
    "POL": ("Poland", Tier.TIER3),
    "BGR": ("Bulgaria", Tier.TIER3),
    "MLT": ("Malta", Tier.TIER3),
    "ROU": ("Romania", Tier.TIER3),
}

YEARS = tuple(range(2001, 2015))

# designed per-year direct-holding counts (out of 25), alternating by year
_HOLDINGS = {Tier.TIER1: (25, 25), Tier.TIER2: (22, 23), Tier.TIER3: (17, 18)}
DESIGNED_CLOSENESS = {Tier.TIER1: 1.00, Tier.TIER2: 1.10, Tier.TIER3: 1.30}


def synthetic_positions(seed: int = 2016, years=YEARS) -> List[PositionRecord]:
    rng = random.Random(seed)
    codes = sorted(REFERENCE_ROSTER)
    hubs = [c for c in codes if REFERENCE_ROSTER[c][1] is Tier.TIER1]
    records = []
    for i, year in enumerate(years):
        growth = 1.0 + 0.06 * i
        for src in codes:
            tier = REFERENCE_ROSTER[src][1]
            k = _HOLDINGS[tier][i % 2]
            if tier is Tier.TIER1:
                targets = [c for c in codes if c != src]
            else:
                peers = [c for c in codes if c != src and c not in hubs]
                targets = hubs + rng.sample(peers, k - len(hubs))
            for dst in sorted(targets):
                amount = round(rng.lognormvariate(7.0, 1.2) * growth, 1)
                records.append(PositionRecord(src, dst, year, max(amount, 0.1)))
    return records


def synthetic_econ(seed: int = 2016, years=YEARS) -> List[IndicatorSeries]:
    rng = random.Random(seed + 1)
    out = []
    for code in sorted(REFERENCE_ROSTER):
        for j, ind in enumerate(ECON_CODES):
            level = rng.uniform(10.0, 1000.0)
            trend = rng.uniform(-0.05, 0.08)
            values = {}
            for i, year in enumerate(years):
                values[year] = round(level * (1 + trend * i) + rng.gauss(0.0, level * 0.02), 3)
            out.append(IndicatorSeries.from_mapping(code, ind, values))
    return out


def positions_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(POSITIONS_HEADER)
    w.writerows((r.source, r.target, r.year, repr(r.weight)) for r in records)
    return buf.getvalue()


def econ_csv(series) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ECON_HEADER)
    for s in series:
        w.writerows((s.country, s.indicator, y, repr(v)) for y, v in s.observations)
    return buf.getvalue()


def write_synthetic(directory, seed: int = 2016) -> Tuple[Path, Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    pos, econ = out / "positions.csv", out / "econ.csv"
    pos.write_text(positions_csv(synthetic_positions(seed)), encoding="utf-8")
    econ.write_text(econ_csv(synthetic_econ(seed)), encoding="utf-8")
    return pos, econ


if __name__ == "__main__":
    if len(sys.argv) != 2:
        sys.exit("usage: python -m cpis_netlab.fixtures OUTDIR")
    for p in write_synthetic(sys.argv[1]):
        print(p)
