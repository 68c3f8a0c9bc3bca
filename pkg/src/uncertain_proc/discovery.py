"""Uncertain directly-follows graphs.

Each entry holds the fewest and most directly-follows occurrences possible
across realizations, summed over traces. On certain logs min == max and the
graph is the ordinary frequency DFG.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .errors import CapExceeded
from .log import UncertainLog, UncertainTrace, activity_count_bounds
from .realizations import default_cap, enumerate_realizations

START, END = "[start]", "[end]"
MIN, MAX = "min", "max"


@dataclass(frozen=True)
class UDFG:
    activities: dict = field(default_factory=dict)  # label -> (min, max)
    edges: dict = field(default_factory=dict)       # (a, b) -> (min, max)
    start: dict = field(default_factory=dict)
    end: dict = field(default_factory=dict)
    skipped: tuple = ()                             # case ids over the realization cap

    def to_json(self) -> dict:
        def table(d):
            return {a: {"min": lo, "max": hi} for a, (lo, hi) in sorted(d.items())}

        return {
            "activities": table(self.activities),
            "edges": [{"from": a, "to": b, "min": lo, "max": hi} for (a, b), (lo, hi) in sorted(self.edges.items())],
            "start": table(self.start),
            "end": table(self.end),
            "skipped": list(self.skipped),
        }


def _min_max(counters: list) -> dict:
    keys = set().union(*counters) if counters else set()
    return {k: (min(c.get(k, 0) for c in counters), max(c.get(k, 0) for c in counters)) for k in keys}


def trace_df_bounds(trace: UncertainTrace, cap: int | None = None) -> dict:
    """Directly-follows (min, max) counts; START/END stand for the artificial ends."""
    counters = []
    for r in enumerate_realizations(trace, cap):
        seq = (START,) + r + (END,)
        counters.append(Counter(zip(seq, seq[1:])))
    return _min_max(counters)


def _add(acc: dict, key, lo: int, hi: int) -> None:
    a, b = acc.get(key, (0, 0))
    acc[key] = (a + lo, b + hi)


def udfg(log: UncertainLog | Iterable[UncertainTrace], cap: int | None = None) -> UDFG:
    cap = default_cap() if cap is None else cap
    activities, edges, start, end, skipped = {}, {}, {}, {}, []
    for t in log:
        try:
            bounds = trace_df_bounds(t, cap)
        except CapExceeded:
            skipped.append(t.case_id)
            continue
        for a in sorted({a for e in t.events for a in e.labels}):
            _add(activities, a, *activity_count_bounds(t, a))
        for (a, b), (lo, hi) in bounds.items():
            if a == START and b == END:
                continue
            if a == START:
                _add(start, b, lo, hi)
            elif b == END:
                _add(end, a, lo, hi)
            else:
                _add(edges, (a, b), lo, hi)
    return UDFG(activities, edges, start, end, tuple(skipped))


def filter_udfg(u: UDFG, act_threshold: int = 0, edge_threshold: int = 0, semantics: str = MIN) -> UDFG:
    """Keep activities / edges whose min (or max) count reaches the threshold."""
    if act_threshold < 0 or edge_threshold < 0:
        raise ValueError("thresholds must be non-negative")
    if semantics not in (MIN, MAX):
        raise ValueError(f"semantics must be {MIN!r} or {MAX!r}")
    pick = 0 if semantics == MIN else 1
    acts = {a: v for a, v in u.activities.items() if v[pick] >= act_threshold}
    edges = {(a, b): v for (a, b), v in u.edges.items()
             if a in acts and b in acts and v[pick] >= edge_threshold}
    start = {a: v for a, v in u.start.items() if a in acts and v[pick] >= edge_threshold}
    end = {a: v for a, v in u.end.items() if a in acts and v[pick] >= edge_threshold}
    return UDFG(acts, edges, start, end, u.skipped)


def udfg_to_dot(u: UDFG) -> str:
    q = json.dumps
    lines = ["digraph udfg {", "  rankdir=LR;"]
    if u.activities:
        lines.append(f"  {q(START)} [shape=circle, label=\"start\"];")
        lines.append(f"  {q(END)} [shape=doublecircle, label=\"end\"];")
    for a, (lo, hi) in sorted(u.activities.items()):
        lines.append(f"  {q(a)} [shape=box, label={q(f'{a} ({lo}/{hi})')}];")
    for a, (lo, hi) in sorted(u.start.items()):
        lines.append(f"  {q(START)} -> {q(a)} [label=\"{lo}/{hi}\"];")
    for (a, b), (lo, hi) in sorted(u.edges.items()):
        lines.append(f"  {q(a)} -> {q(b)} [label=\"{lo}/{hi}\"];")
    for a, (lo, hi) in sorted(u.end.items()):
        lines.append(f"  {q(a)} -> {q(END)} [label=\"{lo}/{hi}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
