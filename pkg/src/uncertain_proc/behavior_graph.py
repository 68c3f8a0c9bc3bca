"""Behavior graphs: the transitive reduction of certain time precedence.

Event ``u`` certainly precedes ``v`` iff ``u.t_max < v.t_min``. This relation
is an interval order, so its transitive reduction can be read off directly
from the events sorted by ``t_min`` (see :func:`kernels.interval_order_cover`)
in ``O(n log n + |edges|)``, comfortably inside the quadratic budget.
"""

from __future__ import annotations

import hashlib
import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .log import UncertainLog, UncertainTrace


@dataclass(frozen=True)
class Node:
    event_id: str
    labels: tuple  # sorted
    indeterminate: bool
    t_min: int
    t_max: int

    @property
    def color(self) -> tuple:
        return (self.labels, self.indeterminate)


@dataclass(frozen=True)
class BehaviorGraph:
    """Nodes in (t_min, t_max, event_id) order; edges as index pairs into ``nodes``."""

    case_id: str
    nodes: tuple
    index_edges: tuple

    @property
    def edges(self) -> list:
        return [(self.nodes[u].event_id, self.nodes[v].event_id) for u, v in self.index_edges]

    def __len__(self) -> int:
        return len(self.nodes)

    def successors(self) -> list:
        out = [[] for _ in self.nodes]
        for u, v in self.index_edges:
            out[u].append(v)
        return out

    def predecessors(self) -> list:
        inc = [[] for _ in self.nodes]
        for u, v in self.index_edges:
            inc[v].append(u)
        return inc

    def sources(self) -> list:
        has_in = {v for _, v in self.index_edges}
        return [i for i in range(len(self.nodes)) if i not in has_in]

    def sinks(self) -> list:
        has_out = {u for u, _ in self.index_edges}
        return [i for i in range(len(self.nodes)) if i not in has_out]

    def to_json(self) -> dict:
        return {
            "case_id": self.case_id,
            "nodes": [
                {"event_id": n.event_id, "labels": list(n.labels), "indeterminate": n.indeterminate,
                 "t_min": n.t_min, "t_max": n.t_max}
                for n in self.nodes
            ],
            "edges": [list(e) for e in self.edges],
        }


def build_behavior_graph(trace: UncertainTrace) -> BehaviorGraph:
    events = trace.sorted_events()
    nodes = tuple(Node(e.event_id, e.sorted_labels, e.indeterminate, e.t_min, e.t_max) for e in events)
    src, dst = kernels.interval_order_cover([n.t_min for n in nodes], [n.t_max for n in nodes])
    return BehaviorGraph(trace.case_id, nodes, tuple(zip(src.tolist(), dst.tolist())))


def _dot_id(s: str) -> str:
    return json.dumps(s)


def to_dot(g: BehaviorGraph) -> str:
    lines = [f"digraph {_dot_id('behavior_graph_' + g.case_id)} {{", "  rankdir=LR;",
             "  node [shape=ellipse];"]
    for n in g.nodes:
        label = n.labels[0] if len(n.labels) == 1 else "{" + ", ".join(n.labels) + "}"
        style = ", style=dashed" if n.indeterminate else ""
        lines.append(f"  {_dot_id(n.event_id)} [label={_dot_id(label)}, xlabel={_dot_id(n.event_id)}{style}];")
    for u, v in g.edges:
        lines.append(f"  {_dot_id(u)} -> {_dot_id(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- canonical form -----------------------------------------------------------

def _refine(colors: list, preds: list, succs: list) -> list:
    """Colour refinement to a stable partition; colours are canonical ranks."""
    n = len(colors)
    while True:
        sigs = [(colors[i],
                 tuple(sorted(colors[p] for p in preds[i])),
                 tuple(sorted(colors[s] for s in succs[i]))) for i in range(n)]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _serialize(order: list, colors: list, base: list, succs: list) -> tuple:
    pos = {v: i for i, v in enumerate(order)}
    node_part = tuple(base[v] for v in order)
    edge_part = tuple(sorted((pos[u], pos[v]) for u in order for v in succs[u]))
    return node_part, edge_part


def _canonical(colors: list, base: list, preds: list, succs: list) -> tuple:
    colors = _refine(colors, preds, succs)
    n = len(colors)
    if len(set(colors)) == n:
        order = sorted(range(n), key=lambda i: colors[i])
        return _serialize(order, colors, base, succs)
    # Individualise each member of the first non-trivial cell; keep the smallest.
    cells = defaultdict(list)
    for i, c in enumerate(colors):
        cells[c].append(i)
    cell = min((c for c in cells.values() if len(c) > 1), key=lambda c: colors[c[0]])
    # Twins (identical neighbourhoods) are interchangeable: one branch suffices.
    nbh = {(tuple(sorted(preds[i])), tuple(sorted(succs[i]))) for i in cell}
    branches = cell[:1] if len(nbh) == 1 else cell
    best = None
    for v in branches:
        forced = [2 * c for c in colors]
        forced[v] -= 1
        cand = _canonical(forced, base, preds, succs)
        if best is None or cand < best:
            best = cand
    return best


def canonical_form(g: BehaviorGraph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic as coloured DAGs.

    Node colour is ``(label set, indeterminate)``. Colour refinement over
    predecessor/successor multisets, with exhaustive individualisation of
    any residual symmetric cell, so equality is exact rather than hash-based.
    """
    base_colors = sorted({n.color for n in g.nodes})
    base_rank = {c: i for i, c in enumerate(base_colors)}
    base = [base_rank[n.color] for n in g.nodes]
    preds, succs = g.predecessors(), g.successors()
    node_part, edge_part = _canonical(list(base), base, preds, succs)
    payload = {
        "colors": [[list(c[0]), c[1]] for c in base_colors],
        "nodes": list(node_part),
        "edges": [list(e) for e in edge_part],
    }
    return json.dumps(payload, separators=(",", ":"), sort_keys=True).encode()


def form_digest(form: bytes) -> str:
    return hashlib.sha256(form).hexdigest()[:16]


def group_variants(log: UncertainLog | Iterable[UncertainTrace]) -> list[tuple[bytes, list]]:
    """Partition traces into uncertain variants; largest groups first."""
    groups: dict = {}
    for t in log:
        groups.setdefault(canonical_form(build_behavior_graph(t)), []).append(t.case_id)
    return sorted(groups.items(), key=lambda kv: (-len(kv[1]), kv[0]))
