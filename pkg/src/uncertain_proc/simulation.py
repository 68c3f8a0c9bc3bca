"""Controlled uncertainty injection.

Every event draws from its own RNG stream keyed by ``(seed, case_id,
event_id)``, so the result does not depend on processing order. Injection
is conservative: the recorded value always stays among the possibilities.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, replace
from typing import Optional

from .errors import DictionaryTooSmall, InvalidSpec
from .log import TimeInterval, UncertainEvent, UncertainLog, UncertainTrace

DERIVE_FROM_LOG = None


@dataclass(frozen=True)
class UncertaintySpec:
    p_activity: float = 0.0
    extra_labels: int = 1
    label_dictionary: Optional[frozenset] = DERIVE_FROM_LOG
    p_timestamp: float = 0.0
    half_width: int = 0  # milliseconds
    p_indeterminate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        for name in ("p_activity", "p_timestamp", "p_indeterminate"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise InvalidSpec(f"{name}={p} is not a probability")
        if self.extra_labels < 1:
            raise InvalidSpec("extra_labels must be at least 1")
        if self.half_width < 0:
            raise InvalidSpec("half_width must be non-negative")
        if self.label_dictionary is not None:
            object.__setattr__(self, "label_dictionary", frozenset(self.label_dictionary))


def _stream(seed: int, case_id: str, event_id: str) -> random.Random:
    key = f"{seed}\x1f{case_id}\x1f{event_id}".encode()
    return random.Random(int.from_bytes(hashlib.sha256(key).digest()[:8], "big"))


def _inject_event(e: UncertainEvent, case_id: str, spec: UncertaintySpec, dictionary: list) -> UncertainEvent:
    rng = _stream(spec.seed, case_id, e.event_id)
    # Fixed draw order: the three coin flips come first, always.
    hit_act, hit_time, hit_ind = (rng.random() < spec.p_activity, rng.random() < spec.p_timestamp,
                                  rng.random() < spec.p_indeterminate)
    labels, time, indeterminate = e.labels, e.time, e.indeterminate
    if hit_act:
        pool = [a for a in dictionary if a not in labels]
        if len(pool) < spec.extra_labels:
            raise DictionaryTooSmall(
                f"event {e.event_id!r} in {case_id!r}: need {spec.extra_labels} new labels, dictionary offers {len(pool)}")
        labels = labels | frozenset(rng.sample(pool, spec.extra_labels))
    if hit_time:
        d1 = rng.randint(0, spec.half_width)
        d2 = rng.randint(0, spec.half_width)
        time = TimeInterval(time.t_min - d1, time.t_max + d2)
    if hit_ind:
        indeterminate = True
    return replace(e, labels=labels, time=time, indeterminate=indeterminate)


def inject(log: UncertainLog, spec: UncertaintySpec) -> UncertainLog:
    if spec.label_dictionary is DERIVE_FROM_LOG:
        dictionary = sorted(log.labels())
    else:
        dictionary = sorted(spec.label_dictionary)
    traces = [
        UncertainTrace(t.case_id, [_inject_event(e, t.case_id, spec, dictionary) for e in t.events], t.attributes)
        for t in log.traces
    ]
    return UncertainLog(traces, log.attributes, log.preamble)
