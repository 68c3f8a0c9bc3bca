"""Realizations: the label sequences an uncertain trace may stand for.

A realization drops any subset of indeterminate events, picks one label per
kept event and orders the kept events consistently with certain precedence.
Enumeration runs a memoised search over the down-sets (already consumed
event sets) of the precedence order, so label-equal choices collapse early.
"""

from __future__ import annotations

import os

from .errors import CapExceeded
from .log import UncertainTrace

DEFAULT_CAP = 10_000


def default_cap() -> int:
    env = os.environ.get("UNCERTAIN_PROC_CAP")
    return int(env) if env else DEFAULT_CAP


def _predecessor_masks(events) -> list:
    masks = []
    for v in events:
        m = 0
        for j, u in enumerate(events):
            if u.t_max < v.t_min:
                m |= 1 << j
        masks.append(m)
    return masks


def _suffix_sets(trace: UncertainTrace, cap: int) -> frozenset:
    if cap <= 0:
        raise ValueError("cap must be positive")
    events = trace.sorted_events()
    n = len(events)
    preds = _predecessor_masks(events)
    labels = [e.sorted_labels for e in events]
    full = (1 << n) - 1
    memo: dict = {}

    def available(done: int) -> list:
        return [i for i in range(n) if not done & (1 << i) and not preds[i] & ~done]

    # Iterative post-order over down-sets; long certain chains would blow the
    # recursion limit otherwise.
    stack = [0]
    while stack:
        done = stack[-1]
        if done in memo:
            stack.pop()
            continue
        if done == full:
            memo[done] = frozenset({()})
            stack.pop()
            continue
        nxt = available(done)
        missing = [done | (1 << i) for i in nxt if done | (1 << i) not in memo]
        if missing:
            stack.extend(missing)
            continue
        stack.pop()
        out: set = set()
        for i in nxt:
            rest = memo[done | (1 << i)]
            if events[i].indeterminate:
                out.update(rest)
            for a in labels[i]:
                out.update((a,) + s for s in rest)
            # every suffix set embeds injectively into the full realization set
            if len(out) > cap:
                raise CapExceeded(f"trace {trace.case_id!r} has more than {cap} realizations")
        memo[done] = frozenset(out)
    return memo[0]


def enumerate_realizations(trace: UncertainTrace, cap: int | None = None) -> list[tuple]:
    """Distinct realizations ordered by (length, labels)."""
    cap = default_cap() if cap is None else cap
    return sorted(_suffix_sets(trace, cap), key=lambda s: (len(s), s))


def count(trace: UncertainTrace, cap: int | None = None) -> int:
    cap = default_cap() if cap is None else cap
    return len(_suffix_sets(trace, cap))
