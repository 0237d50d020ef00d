from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cpis_netlab.errors import ValidationError
from cpis_netlab.ingest import PositionRecord, build_dataset
from cpis_netlab.tiering import (
    Tier,
    TierThresholds,
    assign_tier,
    average_closeness,
    classify_all,
)

import oracles


def test_average_closeness_examples():
    assert average_closeness([1.0, 1.0, 1.0]) == (1.0, 3)
    assert average_closeness([1.0, 1.2]) == (pytest.approx(1.1), 2)
    assert average_closeness([1.0, None, 1.3]) == (pytest.approx(1.15), 2)
    with pytest.raises(ValidationError):
        average_closeness([None, None])


@pytest.mark.parametrize(
    "avg, tier",
    [(1.00, Tier.TIER1), (1.05, Tier.TIER1), (1.10, Tier.TIER2), (1.20, Tier.TIER2),
     (1.205, Tier.TIER3), (1.30, Tier.TIER3)],
)
def test_assign_tier(avg, tier):
    assert assign_tier(avg) is tier


def test_assign_tier_rejects_sub_unit():
    with pytest.raises(ValidationError):
        assign_tier(0.99)


def test_thresholds_validated():
    with pytest.raises(ValidationError):
        TierThresholds(1.2, 1.1)
    with pytest.raises(ValidationError):
        TierThresholds(0.9, 1.1)


@given(st.floats(1, 3), st.floats(1, 3))
def test_assign_tier_monotone(a, b):
    a, b = min(a, b), max(a, b)
    assert assign_tier(a) <= assign_tier(b)


def _records(year, edges):
    return [PositionRecord(s, t, year, 1.0) for s, t in edges]


FIVE = "ABCDE"
# A-D hold positions everywhere; E only in A, B, C, so D is two hops away.
FIVE_EDGES = [(s, t) for s in "ABCD" for t in FIVE if s != t] + [("E", "A"), ("E", "B"), ("E", "C")]


def test_five_country_fixture():
    nodes, edges = list(FIVE), set(FIVE_EDGES)
    assert oracles.closeness_mean_distance(nodes, edges, "E") == Fraction(5, 4)
    recs = [r for y in (2001, 2002, 2003) for r in _records(y, FIVE_EDGES)]
    report = classify_all(build_dataset(recs))
    by = {a.country: a for a in report.assignments}
    assert by["E"].avg_closeness == 1.25 and by["E"].tier is Tier.TIER3
    assert by["E"].years_counted == 3
    assert all(by[c].tier is Tier.TIER1 for c in "ABCD")
    assert report.counts == {Tier.TIER1: 4, Tier.TIER2: 0, Tier.TIER3: 1}


def test_complete_years_all_tier1():
    edges = [(s, t) for s in FIVE for t in FIVE if s != t]
    recs = [r for y in range(2001, 2005) for r in _records(y, edges)]
    report = classify_all(build_dataset(recs))
    assert all(a.tier is Tier.TIER1 and a.avg_closeness == 1.0 for a in report.assignments)


def test_untierable_country_is_warned():
    recs = _records(2001, [("A", "B"), ("B", "A"), ("C", "A")]) + _records(2002, [("A", "B")])
    # D appears only as a target, so it never reaches anyone
    recs += _records(2002, [("C", "D")])
    report = classify_all(build_dataset(recs))
    assert [c for c, _ in report.warnings] == ["D"]
    assert sum(report.counts.values()) == len(report.assignments) == 3


def test_assignments_sorted_by_tier_then_closeness():
    recs = [r for y in (2001, 2002) for r in _records(y, FIVE_EDGES)]
    report = classify_all(build_dataset(recs))
    keys = [(a.tier, a.avg_closeness) for a in report.assignments]
    assert keys == sorted(keys)


def test_explicit_default_thresholds_give_same_partition():
    recs = [r for y in (2001, 2002) for r in _records(y, FIVE_EDGES)]
    ds = build_dataset(recs)
    assert classify_all(ds) == classify_all(ds, TierThresholds(1.05, 1.20))


def test_year_order_does_not_matter():
    assert average_closeness([1.3, 1.0, 1.1]) == average_closeness([1.1, 1.3, 1.0])
