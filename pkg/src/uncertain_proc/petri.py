"""Place/transition nets with unit arc weights.

Nets are immutable; markings are hashable multisets. PNML read/write
covers the place/transition subset plus the ``finalmarkings`` section
written by common process-mining tools.
"""

from __future__ import annotations

import json
import logging
import xml.etree.ElementTree as ET
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .errors import DisconnectedArcEndpoint, InvalidNet, MalformedXml, NoNet, NotEnabled

log = logging.getLogger(__name__)

SILENT = None


class Marking(Mapping):
    """Immutable multiset of tokens; places with zero tokens are omitted."""

    __slots__ = ("_tokens", "_hash")

    def __init__(self, tokens: Mapping | Iterable = ()):
        if isinstance(tokens, Mapping):
            items = tokens.items()
        else:
            counts: dict = {}
            for p in tokens:
                counts[p] = counts.get(p, 0) + 1
            items = counts.items()
        clean = {}
        for p, k in items:
            if k < 0:
                raise ValueError(f"negative token count on {p!r}")
            if k:
                clean[p] = int(k)
        self._tokens = clean
        self._hash = None

    def __getitem__(self, place) -> int:
        return self._tokens.get(place, 0)

    def __contains__(self, place) -> bool:
        return place in self._tokens

    def __iter__(self) -> Iterator:
        return iter(self._tokens)

    def __len__(self) -> int:
        return len(self._tokens)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._tokens.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Marking):
            return self._tokens == other._tokens
        if isinstance(other, Mapping):
            return self._tokens == {p: k for p, k in other.items() if k}
        return NotImplemented

    def __add__(self, other: "Marking") -> "Marking":
        out = dict(self._tokens)
        for p, k in other.items():
            out[p] = out.get(p, 0) + k
        return Marking(out)

    def __repr__(self) -> str:
        inner = ", ".join(f"{p!r}: {k}" for p, k in sorted(self._tokens.items(), key=lambda kv: str(kv[0])))
        return f"Marking({{{inner}}})"


@dataclass(frozen=True, order=True)
class Transition:
    id: str
    label: Optional[str] = SILENT

    @property
    def is_silent(self) -> bool:
        return self.label is None


@dataclass(frozen=True)
class PetriNet:
    places: frozenset
    transitions: frozenset
    arcs: frozenset
    initial_marking: Marking = field(default_factory=Marking)
    final_marking: Marking = field(default_factory=Marking)
    name: str = "net"

    def __post_init__(self):
        object.__setattr__(self, "places", frozenset(self.places))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        object.__setattr__(self, "initial_marking", Marking(self.initial_marking))
        object.__setattr__(self, "final_marking", Marking(self.final_marking))
        tids = {t.id for t in self.transitions}
        if len(tids) != len(self.transitions):
            raise InvalidNet("duplicate transition id")
        if tids & self.places:
            raise InvalidNet("place and transition ids overlap")
        for a, b in self.arcs:
            if not ((a in self.places and b in tids) or (a in tids and b in self.places)):
                raise InvalidNet(f"arc {a!r} -> {b!r} does not join a place and a transition")
        for m in (self.initial_marking, self.final_marking):
            stray = set(m) - self.places
            if stray:
                raise InvalidNet(f"marking on unknown places {sorted(map(str, stray))}")

    @cached_property
    def by_id(self) -> dict:
        return {t.id: t for t in self.transitions}

    @cached_property
    def preset(self) -> dict:
        pre = {t.id: [] for t in self.transitions}
        for a, b in self.arcs:
            if b in pre:
                pre[b].append(a)
        return {t: tuple(sorted(ps)) for t, ps in pre.items()}

    @cached_property
    def postset(self) -> dict:
        post = {t.id: [] for t in self.transitions}
        for a, b in self.arcs:
            if a in post:
                post[a].append(b)
        return {t: tuple(sorted(ps)) for t, ps in post.items()}

    @cached_property
    def sorted_transitions(self) -> tuple:
        return tuple(sorted(self.transitions))

    def label_of(self, tid: str) -> Optional[str]:
        return self.by_id[tid].label


def enabled_transitions(net: PetriNet, m: Marking) -> set:
    return {t.id for t in net.transitions if all(m[p] >= 1 for p in net.preset[t.id])}


def fire(net: PetriNet, m: Marking, tid: str) -> Marking:
    pre = net.preset[tid]
    if any(m[p] < 1 for p in pre):
        raise NotEnabled(f"transition {tid!r} is not enabled")
    out = dict(m.items())
    for p in pre:
        out[p] -= 1
    for p in net.postset[tid]:
        out[p] = out.get(p, 0) + 1
    return Marking(out)


def language(net: PetriNet, cap: int = 100_000) -> set:
    """Visible-label projections of all complete firing sequences.

    Only meaningful for nets with finitely many firing sequences (e.g.
    acyclic ones); ``cap`` bounds the number of explored states.
    """
    from .errors import StateSpaceExceeded

    memo: dict = {}
    budget = [cap]

    def suffixes(m: Marking) -> frozenset:
        if m in memo:
            return memo[m]
        budget[0] -= 1
        if budget[0] < 0:
            raise StateSpaceExceeded(f"more than {cap} markings explored")
        out = {()} if m == net.final_marking else set()
        for tid in sorted(enabled_transitions(net, m)):
            label = net.label_of(tid)
            head = () if label is None else (label,)
            out.update(head + s for s in suffixes(fire(net, m, tid)))
        memo[m] = frozenset(out)
        return memo[m]

    return set(suffixes(net.initial_marking))


def is_acyclic(net: PetriNet) -> bool:
    succ: dict = {}
    for a, b in net.arcs:
        succ.setdefault(a, []).append(b)
    state: dict = {}
    for root in sorted(net.places | {t.id for t in net.transitions}):
        if root in state:
            continue
        stack = [(root, iter(succ.get(root, ())))]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                return False
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(succ.get(nxt, ()))))
    return True


def trace_net(labels: Iterable[str], prefix: str = "") -> PetriNet:
    """Linear net replaying exactly one label sequence."""
    labels = list(labels)
    places = [f"{prefix}p{i}" for i in range(len(labels) + 1)]
    transitions, arcs = [], []
    for i, a in enumerate(labels):
        tid = f"{prefix}t{i}"
        transitions.append(Transition(tid, a))
        arcs += [(places[i], tid), (tid, places[i + 1])]
    return PetriNet(places, transitions, arcs, Marking([places[0]]), Marking([places[-1]]), name="trace")


# -- synchronous product ------------------------------------------------------

LOG_MOVE, MODEL_MOVE, SYNC = "log", "model", "sync"


@dataclass(frozen=True)
class SyncProductNet:
    net: PetriNet
    kind: dict        # product transition id -> LOG_MOVE | MODEL_MOVE | SYNC
    provenance: dict  # product transition id -> (log tid or None, model tid or None)


def sync_product(log_net: PetriNet, model_net: PetriNet) -> SyncProductNet:
    def lp(p):
        return f"L|{p}"

    def mp(p):
        return f"M|{p}"

    places = {lp(p) for p in log_net.places} | {mp(p) for p in model_net.places}
    transitions, arcs, kind, prov = [], [], {}, {}

    def add(tid, label, k, src, pre, post):
        transitions.append(Transition(tid, label))
        kind[tid] = k
        prov[tid] = src
        arcs.extend((p, tid) for p in pre)
        arcs.extend((tid, p) for p in post)

    for t in log_net.sorted_transitions:
        add(f"L|{t.id}", t.label, LOG_MOVE, (t.id, None),
            [lp(p) for p in log_net.preset[t.id]], [lp(p) for p in log_net.postset[t.id]])
    for t in model_net.sorted_transitions:
        add(f"M|{t.id}", t.label, MODEL_MOVE, (None, t.id),
            [mp(p) for p in model_net.preset[t.id]], [mp(p) for p in model_net.postset[t.id]])
    by_label: dict = {}
    for t in model_net.sorted_transitions:
        if t.label is not None:
            by_label.setdefault(t.label, []).append(t)
    for t in log_net.sorted_transitions:
        if t.label is None:
            continue
        for u in by_label.get(t.label, ()):
            add(f"S|{t.id}|{u.id}", t.label, SYNC, (t.id, u.id),
                [lp(p) for p in log_net.preset[t.id]] + [mp(p) for p in model_net.preset[u.id]],
                [lp(p) for p in log_net.postset[t.id]] + [mp(p) for p in model_net.postset[u.id]])

    def lift(m, f):
        return Marking({f(p): k for p, k in m.items()})

    im = lift(log_net.initial_marking, lp) + lift(model_net.initial_marking, mp)
    fm = lift(log_net.final_marking, lp) + lift(model_net.final_marking, mp)
    return SyncProductNet(PetriNet(places, transitions, arcs, im, fm, name="product"), kind, prov)


# -- PNML ---------------------------------------------------------------------

PTNET_TYPE = "http://www.pnml.org/version-2009/grammar/ptnet"


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _child(el, name):
    for c in el:
        if _local(c.tag) == name:
            return c
    return None


def _text_of(el, name) -> Optional[str]:
    c = _child(el, name)
    if c is None:
        return None
    t = _child(c, "text")
    return (t.text or "") if t is not None else None


def _walk(el, name):
    for c in el.iter():
        if _local(c.tag) == name:
            yield c


def parse_pnml(data: bytes) -> PetriNet:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXml(str(exc)) from exc
    net_el = next(_walk(root, "net"), None)
    if net_el is None:
        raise NoNet("PNML document contains no <net> element")

    places, initial = set(), {}
    for p in _walk(net_el, "place"):
        pid = p.get("id")
        if pid is None:  # <place idref=...> inside finalmarkings
            continue
        places.add(pid)
        tok = _text_of(p, "initialMarking")
        if tok and tok.strip():
            initial[pid] = int(tok.strip())

    transitions = []
    for t in _walk(net_el, "transition"):
        name = _text_of(t, "name")
        invisible = any(ts.get("activity") == "$invisible$" for ts in _walk(t, "toolspecific"))
        label = None if invisible or not name else name
        transitions.append(Transition(t.get("id"), label))
    tids = {t.id for t in transitions}

    arcs = set()
    for a in _walk(net_el, "arc"):
        s, d = a.get("source"), a.get("target")
        known = places | tids
        if s not in known or d not in known:
            raise DisconnectedArcEndpoint(f"arc {a.get('id')!r} references unknown node")
        arcs.add((s, d))

    final = None
    fm_el = next(_walk(net_el, "finalmarkings"), None)
    if fm_el is not None:
        marking_el = next(_walk(fm_el, "marking"), None)
        if marking_el is not None:
            final = {}
            for p in _walk(marking_el, "place"):
                txt = _text_of_self(p)
                if txt:
                    final[p.get("idref")] = int(txt)
    if final is None:
        has_out = {a for a, _ in arcs if a in places}
        final = {p: 1 for p in places if p not in has_out}
        log.warning("PNML has no final marking; defaulting to one token on each sink place")

    name = _text_of(net_el, "name") or net_el.get("id") or "net"
    try:
        return PetriNet(places, transitions, arcs, Marking(initial), Marking(final), name=name)
    except InvalidNet as exc:
        raise DisconnectedArcEndpoint(str(exc)) from exc


def _text_of_self(el) -> Optional[str]:
    t = _child(el, "text")
    return t.text.strip() if t is not None and t.text else None


def write_pnml(net: PetriNet) -> bytes:
    root = ET.Element("pnml")
    net_el = ET.SubElement(root, "net", id=net.name or "net", type=PTNET_TYPE)
    name = ET.SubElement(net_el, "name")
    ET.SubElement(name, "text").text = net.name
    page = ET.SubElement(net_el, "page", id="n0")
    for p in sorted(net.places):
        p_el = ET.SubElement(page, "place", id=p)
        ET.SubElement(ET.SubElement(p_el, "name"), "text").text = p
        if net.initial_marking[p]:
            ET.SubElement(ET.SubElement(p_el, "initialMarking"), "text").text = str(net.initial_marking[p])
    for t in net.sorted_transitions:
        t_el = ET.SubElement(page, "transition", id=t.id)
        if t.is_silent:
            ET.SubElement(t_el, "toolspecific", tool="ProM", version="6.4", activity="$invisible$")
        else:
            ET.SubElement(ET.SubElement(t_el, "name"), "text").text = t.label
    for i, (a, b) in enumerate(sorted(net.arcs)):
        ET.SubElement(page, "arc", id=f"a{i}", source=a, target=b)
    fm = ET.SubElement(ET.SubElement(net_el, "finalmarkings"), "marking")
    for p in sorted(net.final_marking):
        ET.SubElement(ET.SubElement(fm, "place", idref=p), "text").text = str(net.final_marking[p])
    ET.indent(root)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


# -- DOT ----------------------------------------------------------------------

def net_to_dot(net: PetriNet, xlabels: Optional[dict] = None) -> str:
    """Places as circles, transitions as boxes, silent transitions filled black.

    ``xlabels`` optionally maps transition ids to an external caption (the
    behavior net uses it to show the originating event).
    """
    q = json.dumps
    lines = [f"digraph {q(net.name)} {{", "  rankdir=LR;"]
    for p in sorted(net.places):
        tokens = net.initial_marking[p]
        final = net.final_marking[p]
        label = "&#9679;" * tokens if tokens else ""
        extra = ", peripheries=2" if final else ""
        lines.append(f"  {q(p)} [shape=circle, label={q(label)}, width=0.4{extra}];")
    for t in net.sorted_transitions:
        xl = f", xlabel={q(xlabels[t.id])}" if xlabels and t.id in xlabels else ""
        if t.is_silent:
            lines.append(f"  {q(t.id)} [shape=box, style=filled, fillcolor=black, label=\"\"{xl}];")
        else:
            lines.append(f"  {q(t.id)} [shape=box, label={q(t.label)}{xl}];")
    for a, b in sorted(net.arcs):
        lines.append(f"  {q(a)} -> {q(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
