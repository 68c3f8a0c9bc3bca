import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_realizations, certain_trace, random_log, random_trace, running_example

from uncertain_proc.discovery import END, MAX, MIN, START, UDFG, filter_udfg, trace_df_bounds, udfg, udfg_to_dot
from uncertain_proc.log import UncertainLog, UncertainTrace


def brute_df(trace):
    """Direct min/max over brute-force realizations, pair by pair."""
    rs = brute_realizations(trace)
    labels = sorted({a for e in trace.events for a in e.labels}) + [START, END]
    out = {}
    for a in labels:
        for b in labels:
            counts = []
            for r in rs:
                seq = (START,) + r + (END,)
                counts.append(sum(1 for i in range(len(seq) - 1) if seq[i] == a and seq[i + 1] == b))
            if max(counts):
                out[(a, b)] = (min(counts), max(counts))
    return out


def test_running_example(trace):
    b = trace_df_bounds(trace)
    assert b[("Splenomeg", "Adm")] == (0, 1)
    assert b.get(("PrTP", "SecTP"), (0, 0)) == (0, 0)
    u = udfg(UncertainLog([trace]))
    assert u.activities["Adm"] == (1, 1)
    assert u.edges[("SecTP", "Adm")] == (0, 1)
    assert u.end == {"Adm": (1, 1)}
    assert b == brute_df(trace)


def test_empty_and_certain():
    u = udfg(UncertainLog())
    assert u.activities == u.edges == u.start == u.end == {}
    u = udfg(UncertainLog([certain_trace("AB", "1"), certain_trace("AB", "2")]))
    assert u.edges[("A", "B")] == (2, 2)
    assert certain_trace("AB") and trace_df_bounds(certain_trace("AB"))[("A", "B")] == (1, 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_trace_bounds_match_brute_force(seed):
    t = random_trace(random.Random(seed), max_events=5)
    assert trace_df_bounds(t) == brute_df(t)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**9))
def test_certain_log_is_classical_dfg(seed):
    rng = random.Random(seed)
    traces = [certain_trace([rng.choice("ABC") for _ in range(rng.randint(1, 7))], f"c{i}") for i in range(5)]
    u = udfg(UncertainLog(traces))
    direct = Counter()
    for t in traces:
        seq = [next(iter(e.labels)) for e in t.events]
        direct.update(zip(seq, seq[1:]))
    assert u.edges == {k: (v, v) for k, v in direct.items()}
    assert all(lo == hi for lo, hi in list(u.activities.values()) + list(u.start.values()) + list(u.end.values()))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_additive_over_concatenation(seed):
    rng = random.Random(seed)
    a = random_log(rng, n_traces=3, max_events=4)
    b = UncertainLog([UncertainTrace("b" + t.case_id, t.events) for t in random_log(rng, n_traces=3, max_events=4)])
    ua, ub, uab = udfg(a), udfg(b), udfg(a.concat(b))
    for field in ("activities", "edges", "start", "end"):
        x, y, z = getattr(ua, field), getattr(ub, field), getattr(uab, field)
        for k in set(x) | set(y):
            assert z[k] == tuple(p + q for p, q in zip(x.get(k, (0, 0)), y.get(k, (0, 0))))


def test_filter(trace):
    u = udfg([trace])
    assert filter_udfg(u, 0, 0, MIN) == u == filter_udfg(u, 0, 0, MAX)
    f = filter_udfg(u, 0, 1, MIN)
    assert all(v[0] >= 1 for v in f.edges.values())
    assert f.edges == {k: v for k, v in u.edges.items() if v[0] >= 1}
    assert f.end == {"Adm": (1, 1)}
    empty = filter_udfg(u, act_threshold=5)
    assert empty.activities == empty.edges == empty.start == empty.end == {}
    with pytest.raises(ValueError):
        filter_udfg(u, -1)


def random_udfg(rng):
    acts = {a: tuple(sorted(rng.sample(range(8), 2))) for a in rng.sample("ABCDEF", rng.randint(1, 6))}
    names = list(acts)
    edges = {(a, b): tuple(sorted((rng.randint(0, 6), rng.randint(0, 6)))) for a in names for b in names
             if rng.random() < 0.5}
    return UDFG(acts, edges, {a: (0, 1) for a in names[:2]}, {a: (1, 1) for a in names[-1:]})


def test_filter_monotone():
    rng = random.Random(13)
    for _ in range(50):
        u = random_udfg(rng)
        for sem in (MIN, MAX):
            prev = filter_udfg(u, 0, 0, sem)
            for th in range(1, 9):
                cur = filter_udfg(u, th, rng.randint(0, 3), sem)
                cur2 = filter_udfg(u, th, 0, sem)
                assert set(cur.activities) <= set(prev.activities) and set(cur.edges) <= set(cur2.edges)
                assert set(cur2.edges) <= set(prev.edges)
                prev = cur2


def test_dot(trace):
    u = udfg([trace])
    dot = udfg_to_dot(u)
    assert dot == udfg_to_dot(udfg([running_example()]))
    node_lines = [l for l in dot.splitlines() if "[shape=" in l]
    assert len(node_lines) == 5 + 2
    assert '"Splenomeg" -> "Adm" [label="0/1"]' in dot
    assert "->" not in udfg_to_dot(UDFG())
