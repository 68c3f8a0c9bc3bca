import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_realizations, certain_trace, random_log, random_trace

from uncertain_proc.errors import DuplicateId, EmptyLabelSet, EmptyTrace, InvalidInterval
from uncertain_proc.log import (TimeInterval, UncertainLog, UncertainTrace, activity_count_bounds,
                                end_activity_bounds, event, gantt_rows, is_uncertain_event,
                                start_activity_bounds)
from uncertain_proc.stats import log_statistics


def by_id(trace, eid):
    return next(e for e in trace.events if e.event_id == eid)


def test_uncertain_event_flags(trace):
    assert is_uncertain_event(by_id(trace, "e2"))      # two candidate labels
    assert not is_uncertain_event(by_id(trace, "e4"))
    assert is_uncertain_event(by_id(trace, "e1"))      # indeterminate
    assert is_uncertain_event(by_id(trace, "e3"))      # interval


def test_invariants_enforced():
    with pytest.raises(InvalidInterval):
        TimeInterval(5, 4)
    with pytest.raises(EmptyLabelSet):
        event("x", set(), 1)
    with pytest.raises(DuplicateId):
        UncertainTrace("c", [event("a", "A", 1), event("a", "B", 2)])
    with pytest.raises(DuplicateId):
        UncertainLog([certain_trace("A", "c"), certain_trace("B", "c")])


@pytest.mark.parametrize("label, expected", [
    ("NightSweats", (0, 1)), ("PrTP", (0, 1)), ("Adm", (1, 1)), ("Splenomeg", (1, 1)), ("Nope", (0, 0)),
])
def test_activity_count_bounds(trace, label, expected):
    assert activity_count_bounds(trace, label) == expected


def test_boundary_bounds(trace):
    assert start_activity_bounds(trace, "Splenomeg") == (0, 1)
    assert end_activity_bounds(trace, "Adm") == (1, 1)
    assert start_activity_bounds(trace, "Adm") == (0, 0)
    single = UncertainTrace("s", [event("a", "A", 0)])
    assert start_activity_bounds(single, "A") == (1, 1)
    with pytest.raises(EmptyTrace):
        start_activity_bounds(UncertainTrace("empty"), "A")


def test_all_indeterminate_trace_may_be_empty():
    t = UncertainTrace("s", [event("a", "A", 0, indeterminate=True)])
    assert start_activity_bounds(t, "A") == (0, 1)
    assert end_activity_bounds(t, "A") == (0, 1)


def _brute_bounds(trace, labels):
    rs = brute_realizations(trace)
    out = {}
    for a in labels:
        counts = [r.count(a) for r in rs]
        starts = [int(bool(r) and r[0] == a) for r in rs]
        ends = [int(bool(r) and r[-1] == a) for r in rs]
        out[a] = ((min(counts), max(counts)), (min(starts), max(starts)), (min(ends), max(ends)))
    return out


def test_bounds_match_brute_force_realizations():
    rng = random.Random(7)
    for _ in range(150):
        t = random_trace(rng, max_events=6)
        expected = _brute_bounds(t, "ABCD")
        for a in "ABCD":
            got = (activity_count_bounds(t, a), start_activity_bounds(t, a), end_activity_bounds(t, a))
            assert got == expected[a], (t, a)


def test_certain_trace_min_equals_max():
    t = certain_trace("ABAC")
    for a in "ABCD":
        lo, hi = activity_count_bounds(t, a)
        assert lo == hi


def test_gantt_rows(trace):
    rows = gantt_rows(trace)
    assert [r[0] for r in rows] == ["e3", "e1", "e2", "e4"]
    assert gantt_rows(UncertainTrace("e")) == []
    tie = UncertainTrace("t", [event("b", "B", 3), event("a", "A", 3)])
    assert [r[0] for r in gantt_rows(tie)] == ["a", "b"]


@given(st.integers(0, 10_000))
def test_gantt_is_permutation(seed):
    t = random_trace(random.Random(seed), max_events=8)
    rows = gantt_rows(t)
    assert sorted(r[0] for r in rows) == sorted(e.event_id for e in t.events)
    for ev, labels, lo, hi, ind in rows:
        e = next(x for x in t.events if x.event_id == ev)
        assert (set(labels), lo, hi, ind) == (set(e.labels), e.t_min, e.t_max, e.indeterminate)


# -- statistics ---------------------------------------------------------------

def test_statistics_running_example(log):
    s = log_statistics(log)
    assert (s.n_traces, s.n_events, s.n_uncertain_events, s.n_uncertain_traces) == (1, 4, 3, 1)
    assert s.n_variants == 1
    assert s.mean_trace_length == 4


def test_statistics_empty():
    s = log_statistics(UncertainLog())
    assert (s.n_traces, s.n_events, s.n_uncertain_events, s.n_uncertain_traces, s.n_variants) == (0, 0, 0, 0, 0)
    assert s.activity_counts == s.start_activity_counts == s.end_activity_counts == {}


def test_statistics_identical_certain_traces():
    s = log_statistics(UncertainLog([certain_trace("AB", "x"), certain_trace("AB", "y", start=50)]))
    assert s.n_variants == 1
    assert s.activity_counts["A"] == (2, 2)
    assert s.n_uncertain_traces == 0


def test_statistics_json(log):
    js = log_statistics(log).to_json()
    assert js["uncertain_event_share"] == 0.75
    assert js["activity_counts"]["NightSweats"] == {"min": 0, "max": 1}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_statistics_additive_over_concatenation(seed):
    rng = random.Random(seed)
    a = random_log(rng, n_traces=rng.randint(0, 4))
    b = UncertainLog([UncertainTrace("b" + t.case_id, t.events) for t in random_log(rng, n_traces=rng.randint(0, 4))])
    sa, sb, sab = log_statistics(a), log_statistics(b), log_statistics(a.concat(b))
    for f in ("n_traces", "n_events", "n_uncertain_events", "n_uncertain_traces"):
        assert getattr(sab, f) == getattr(sa, f) + getattr(sb, f)
    if sab.n_traces:
        weighted = (sa.mean_trace_length * sa.n_traces + sb.mean_trace_length * sb.n_traces) / sab.n_traces
        assert sab.mean_trace_length == weighted
        assert isinstance(sab.mean_trace_length, Fraction)
    for table in ("activity_counts", "start_activity_counts", "end_activity_counts"):
        ta, tb, tab = getattr(sa, table), getattr(sb, table), getattr(sab, table)
        for k in set(ta) | set(tb):
            lo = ta.get(k, (0, 0))[0] + tb.get(k, (0, 0))[0]
            hi = ta.get(k, (0, 0))[1] + tb.get(k, (0, 0))[1]
            assert tab[k] == (lo, hi)
        for lo, hi in tab.values():
            assert lo <= hi
