"""Behavior nets: acyclic Petri nets replaying exactly the realizations of a trace."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .behavior_graph import BehaviorGraph, build_behavior_graph
from .log import UncertainTrace
from .petri import Marking, PetriNet, Transition, enabled_transitions, fire, net_to_dot

TAU = "tau"


@dataclass(frozen=True)
class BehaviorNet:
    net: PetriNet
    provenance: dict  # transition id -> (event_id, label or None)

    @property
    def initial_marking(self) -> Marking:
        return self.net.initial_marking

    @property
    def final_marking(self) -> Marking:
        return self.net.final_marking

    def to_dot(self) -> str:
        return net_to_dot(self.net, xlabels={t: ev for t, (ev, _) in self.provenance.items()})


def transition_id(event_id: str, label: Optional[str]) -> str:
    return f"{event_id}:{TAU if label is None else label}"


def build_behavior_net(g: BehaviorGraph | UncertainTrace) -> BehaviorNet:
    """One place per graph edge, plus a marked place per source and a final place per sink.

    Every transition of an event shares that event's preset and postset:
    one transition per candidate label, and a silent one if the event is
    indeterminate.
    """
    if isinstance(g, UncertainTrace):
        g = build_behavior_graph(g)
    ids = [n.event_id for n in g.nodes]
    pre = [[] for _ in ids]
    post = [[] for _ in ids]
    places = []
    for u, v in g.index_edges:
        p = f"({ids[u]},{ids[v]})"
        places.append(p)
        post[u].append(p)
        pre[v].append(p)
    initial, final = [], []
    for i in g.sources():
        p = f"(start,{ids[i]})"
        places.append(p)
        pre[i].append(p)
        initial.append(p)
    for i in g.sinks():
        p = f"({ids[i]},end)"
        places.append(p)
        post[i].append(p)
        final.append(p)

    transitions, arcs, prov = [], [], {}
    for i, node in enumerate(g.nodes):
        choices = list(node.labels) + ([None] if node.indeterminate else [])
        for label in choices:
            tid = transition_id(node.event_id, label)
            transitions.append(Transition(tid, label))
            prov[tid] = (node.event_id, label)
            arcs.extend((p, tid) for p in pre[i])
            arcs.extend((tid, p) for p in post[i])
    net = PetriNet(places, transitions, arcs, Marking(initial), Marking(final),
                   name=f"behavior_net_{g.case_id}")
    return BehaviorNet(net, prov)


def accepts(net: BehaviorNet | PetriNet, sequence: Iterable[str]) -> bool:
    """Whether some complete firing sequence projects onto ``sequence``."""
    pn = net.net if isinstance(net, BehaviorNet) else net
    seq = tuple(sequence)
    seen = set()
    stack = [(pn.initial_marking, 0)]
    while stack:
        m, i = stack.pop()
        if (m, i) in seen:
            continue
        seen.add((m, i))
        if i == len(seq) and m == pn.final_marking:
            return True
        for tid in enabled_transitions(pn, m):
            label = pn.label_of(tid)
            if label is None:
                stack.append((fire(pn, m, tid), i))
            elif i < len(seq) and label == seq[i]:
                stack.append((fire(pn, m, tid), i + 1))
    return False
