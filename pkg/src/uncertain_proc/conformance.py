"""Alignment-based conformance for uncertain traces.

Costs: synchronous moves and silent moves (on either side) are free; a
visible log move or a visible model move costs 1. Optimal alignments come
from a uniform-cost search over the synchronous product; among equal-cost
candidates the search prefers the lexicographically smaller step sequence
(steps ordered sync < log < model, then by label and transition ids).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .behavior_net import build_behavior_net
from .errors import CapExceeded, StateSpaceExceeded, UncertainProcError, Unreachable
from .log import UncertainLog, UncertainTrace
from .petri import LOG_MOVE, MODEL_MOVE, SYNC, PetriNet, SyncProductNet, sync_product, trace_net
from .realizations import default_cap, enumerate_realizations

DEFAULT_MAX_STATES = 1_000_000
_KIND_RANK = {SYNC: 0, LOG_MOVE: 1, MODEL_MOVE: 2}


@dataclass(frozen=True)
class Step:
    kind: str                         # "sync" | "log" | "model"
    label: Optional[str]              # None for silent moves
    log_transition: Optional[str] = None
    model_transition: Optional[str] = None

    @property
    def cost(self) -> int:
        return 0 if self.kind == SYNC or self.label is None else 1

    def to_dict(self) -> dict:
        return {"move": self.kind, "label": self.label,
                "log_transition": self.log_transition, "model_transition": self.model_transition}

    def __str__(self) -> str:
        shown = "τ" if self.label is None else self.label
        return f"{self.kind.upper()}({shown})"


@dataclass(frozen=True)
class Alignment:
    steps: tuple
    cost: int

    def log_projection(self) -> tuple:
        return tuple(s.label for s in self.steps if s.kind in (LOG_MOVE, SYNC) and s.label is not None)

    def model_firing_sequence(self) -> tuple:
        return tuple(s.model_transition for s in self.steps if s.kind in (MODEL_MOVE, SYNC))

    def to_dict(self) -> dict:
        return {"cost": self.cost, "steps": [s.to_dict() for s in self.steps]}


@dataclass(frozen=True)
class ConformanceBounds:
    case_id: str
    lower: Optional[int]
    upper: Optional[int]
    best_alignment: Optional[Alignment] = None
    worst_alignment: Optional[Alignment] = None
    status: str = "ok"
    message: str = ""

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "lower": self.lower,
            "upper": self.upper,
            "best_alignment": self.best_alignment.to_dict() if self.best_alignment else None,
            "worst_alignment": self.worst_alignment.to_dict() if self.worst_alignment else None,
            "status": self.status,
            **({"message": self.message} if self.message else {}),
        }


class _Compiled:
    """Index-based view of a product net for the search loop."""

    def __init__(self, product: SyncProductNet):
        net = product.net
        self.places = sorted(net.places)
        index = {p: i for i, p in enumerate(self.places)}
        steps = []
        for t in net.transitions:
            log_t, model_t = product.provenance[t.id]
            steps.append(Step(product.kind[t.id], t.label, log_t, model_t))
        order = sorted(range(len(steps)), key=lambda k: (
            _KIND_RANK[steps[k].kind], steps[k].label is not None, steps[k].label or "",
            steps[k].log_transition or "", steps[k].model_transition or ""))
        tids = [t.id for t in net.transitions]
        self.steps = [steps[k] for k in order]
        self.pre = [tuple(index[p] for p in net.preset[tids[k]]) for k in order]
        self.post = [tuple(index[p] for p in net.postset[tids[k]]) for k in order]
        self.cost = [s.cost for s in self.steps]
        self.initial = tuple(net.initial_marking[p] for p in self.places)
        self.final = tuple(net.final_marking[p] for p in self.places)
        # transitions by input place, to skip hopeless candidates quickly
        self.unconditional = [k for k, pre in enumerate(self.pre) if not pre]
        self.by_place = [[] for _ in self.places]
        for k, pre in enumerate(self.pre):
            if pre:
                self.by_place[pre[0]].append(k)

    def enabled(self, state: tuple) -> list:
        out = list(self.unconditional)
        for p, tokens in enumerate(state):
            if tokens:
                out.extend(k for k in self.by_place[p] if all(state[q] for q in self.pre[k]))
        out.sort()
        return out

    def fire(self, state: tuple, k: int) -> tuple:
        s = list(state)
        for p in self.pre[k]:
            s[p] -= 1
        for p in self.post[k]:
            s[p] += 1
        return tuple(s)


def search(product: SyncProductNet, max_states: int = DEFAULT_MAX_STATES) -> Alignment:
    """Uniform-cost search from initial to final product marking."""
    c = _Compiled(product)
    heap = [(0, (), c.initial)]
    settled = set()
    while heap:
        cost, path, state = heapq.heappop(heap)
        if state in settled:
            continue
        settled.add(state)
        if state == c.final:
            return Alignment(tuple(c.steps[k] for k in path), cost)
        if len(settled) > max_states:
            raise StateSpaceExceeded(f"explored more than {max_states} markings")
        for k in c.enabled(state):
            nxt = c.fire(state, k)
            if nxt not in settled:
                heapq.heappush(heap, (cost + c.cost[k], path + (k,), nxt))
    raise Unreachable("final marking of the product is not reachable")


def align(trace_labels: Sequence[str], model: PetriNet, max_states: int = DEFAULT_MAX_STATES) -> Alignment:
    """Optimal alignment of one label sequence against ``model``."""
    return search(sync_product(trace_net(trace_labels), model), max_states)


def bounds_exhaustive(trace: UncertainTrace, model: PetriNet, cap: int | None = None,
                      max_states: int = DEFAULT_MAX_STATES) -> ConformanceBounds:
    """Best and worst optimal alignment cost over every realization."""
    realizations = enumerate_realizations(trace, cap)
    best = worst = None
    for r in realizations:
        a = align(r, model, max_states)
        if best is None or a.cost < best.cost:
            best = a
        if worst is None or a.cost > worst.cost:
            worst = a
    return ConformanceBounds(trace.case_id, best.cost, worst.cost, best, worst)


def bounds_optimized(trace: UncertainTrace, model: PetriNet,
                     max_states: int = DEFAULT_MAX_STATES) -> tuple[int, Alignment]:
    """Lower bound from a single search: behavior net of the trace x model."""
    a = search(sync_product(build_behavior_net(trace).net, model), max_states)
    return a.cost, a


def _bounds_one(trace: UncertainTrace, model: PetriNet, mode: str, cap: int,
                max_states: int) -> ConformanceBounds:
    if mode == "exhaustive":
        try:
            return bounds_exhaustive(trace, model, cap, max_states)
        except UncertainProcError as exc:
            return ConformanceBounds(trace.case_id, None, None, status=exc.code, message=str(exc))
    if mode != "optimized":
        raise ValueError(f"unknown mode {mode!r}")
    try:
        lower, best = bounds_optimized(trace, model, max_states)
    except UncertainProcError as exc:
        return ConformanceBounds(trace.case_id, None, None, status=exc.code, message=str(exc))
    try:
        full = bounds_exhaustive(trace, model, cap, max_states)
    except CapExceeded as exc:
        return ConformanceBounds(trace.case_id, lower, None, best, None,
                                 status="upper_" + exc.code, message=str(exc))
    except UncertainProcError as exc:
        return ConformanceBounds(trace.case_id, lower, None, best, None, status=exc.code, message=str(exc))
    return ConformanceBounds(trace.case_id, lower, full.upper, best, full.worst_alignment)


def _bounds_task(args):
    return _bounds_one(*args)


def bounds_log(log: UncertainLog | Iterable[UncertainTrace], model: PetriNet, mode: str = "exhaustive",
               cap: int | None = None, max_states: int = DEFAULT_MAX_STATES,
               jobs: int = 1) -> list[ConformanceBounds]:
    """Per-trace bounds in log order; a failing trace is flagged, not fatal."""
    cap = default_cap() if cap is None else cap
    tasks = [(t, model, mode, cap, max_states) for t in log]
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_bounds_task, tasks))
    return [_bounds_task(t) for t in tasks]
