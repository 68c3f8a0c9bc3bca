"""In-memory model of uncertain event data.

An event carries a set of candidate activity labels, a closed timestamp
interval (integer milliseconds since the Unix epoch, UTC) and an
indeterminacy flag. Certain values are the degenerate cases: a singleton
label set, a zero-width interval, ``indeterminate=False``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Iterable, Iterator, Mapping

from .errors import DuplicateId, EmptyLabelSet, EmptyTrace, InvalidInterval, TraceNotFound

Scalar = Any  # str | int | float | bool | datetime

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


def to_millis(dt: datetime) -> int:
    """Milliseconds since epoch; naive datetimes are taken as UTC."""
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    delta = dt - _EPOCH
    return (delta.days * 86_400 + delta.seconds) * 1000 + delta.microseconds // 1000


def from_millis(ms: int) -> datetime:
    from datetime import timedelta

    return _EPOCH + timedelta(milliseconds=ms)


@dataclass(frozen=True, order=True)
class TimeInterval:
    t_min: int
    t_max: int

    def __post_init__(self):
        if self.t_min > self.t_max:
            raise InvalidInterval(f"interval [{self.t_min}, {self.t_max}] has min > max")

    @classmethod
    def point(cls, t: int) -> "TimeInterval":
        return cls(t, t)

    @property
    def is_certain(self) -> bool:
        return self.t_min == self.t_max

    def precedes(self, other: "TimeInterval") -> bool:
        """Strict certain precedence; touching intervals are unordered."""
        return self.t_max < other.t_min

    def contains(self, other: "TimeInterval") -> bool:
        return self.t_min <= other.t_min and other.t_max <= self.t_max


@dataclass(frozen=True)
class UncertainEvent:
    event_id: str
    labels: frozenset
    time: TimeInterval
    indeterminate: bool = False
    extra_attributes: Mapping[str, Scalar] = field(default_factory=dict, compare=True)

    def __post_init__(self):
        labels = self.labels
        if isinstance(labels, str):
            labels = (labels,)
        object.__setattr__(self, "labels", frozenset(labels))
        if not self.labels:
            raise EmptyLabelSet(f"event {self.event_id!r} has no activity label")
        if not isinstance(self.time, TimeInterval):
            object.__setattr__(self, "time", TimeInterval(*self.time))
        object.__setattr__(self, "extra_attributes", dict(self.extra_attributes))

    @property
    def t_min(self) -> int:
        return self.time.t_min

    @property
    def t_max(self) -> int:
        return self.time.t_max

    @property
    def sort_key(self) -> tuple:
        return (self.time.t_min, self.time.t_max, self.event_id)

    @property
    def sorted_labels(self) -> tuple:
        return tuple(sorted(self.labels))


@dataclass(frozen=True)
class UncertainTrace:
    case_id: str
    events: tuple = ()
    attributes: Mapping[str, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "attributes", dict(self.attributes))
        seen = set()
        for e in self.events:
            if e.event_id in seen:
                raise DuplicateId(f"duplicate event id {e.event_id!r} in trace {self.case_id!r}")
            seen.add(e.event_id)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[UncertainEvent]:
        return iter(self.events)

    def sorted_events(self) -> list:
        """Events in the canonical (t_min, t_max, event_id) order."""
        return sorted(self.events, key=lambda e: e.sort_key)


@dataclass(frozen=True)
class UncertainLog:
    traces: tuple = ()
    attributes: Mapping[str, Scalar] = field(default_factory=dict)
    # Raw XES header elements (extensions, globals, classifiers) kept verbatim.
    preamble: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "traces", tuple(self.traces))
        object.__setattr__(self, "attributes", dict(self.attributes))
        object.__setattr__(self, "preamble", tuple(self.preamble))
        seen = set()
        for t in self.traces:
            if t.case_id in seen:
                raise DuplicateId(f"duplicate case id {t.case_id!r}")
            seen.add(t.case_id)

    def __len__(self) -> int:
        return len(self.traces)

    def __iter__(self) -> Iterator[UncertainTrace]:
        return iter(self.traces)

    def trace(self, case_id: str) -> UncertainTrace:
        for t in self.traces:
            if t.case_id == case_id:
                return t
        raise TraceNotFound(f"no trace with case id {case_id!r}")

    def labels(self) -> set:
        return {a for t in self.traces for e in t.events for a in e.labels}

    def concat(self, other: "UncertainLog") -> "UncertainLog":
        return UncertainLog(self.traces + other.traces, {**self.attributes, **other.attributes})


def event(event_id: str, labels: Iterable[str] | str, t_min: int, t_max: int | None = None,
          indeterminate: bool = False, **extra) -> UncertainEvent:
    """Shorthand constructor used throughout the tests and examples."""
    if t_max is None:
        t_max = t_min
    return UncertainEvent(event_id, labels, TimeInterval(t_min, t_max), indeterminate, extra)


# -- per-event / per-trace queries --------------------------------------------

def is_uncertain_event(e: UncertainEvent) -> bool:
    return len(e.labels) > 1 or e.time.t_min < e.time.t_max or e.indeterminate


def is_uncertain_trace(t: UncertainTrace) -> bool:
    return any(is_uncertain_event(e) for e in t.events)


def activity_count_bounds(t: UncertainTrace, label: str) -> tuple[int, int]:
    """Fewest and most occurrences of ``label`` over all realizations of ``t``."""
    lo = hi = 0
    for e in t.events:
        if label in e.labels:
            hi += 1
            if len(e.labels) == 1 and not e.indeterminate:
                lo += 1
    return lo, hi


def _boundary_candidates(t: UncertainTrace, at_start: bool) -> list:
    # An event can open a realization iff every event certainly before it may
    # be dropped, i.e. its t_min does not exceed any determinate event's t_max.
    # Closing is the mirror image.
    det = [e for e in t.events if not e.indeterminate]
    if at_start:
        limit = min((e.t_max for e in det), default=None)
        return [e for e in t.events if limit is None or e.t_min <= limit]
    limit = max((e.t_min for e in det), default=None)
    return [e for e in t.events if limit is None or e.t_max >= limit]


def _boundary_bounds(t: UncertainTrace, label: str, at_start: bool) -> tuple[int, int]:
    if not t.events:
        raise EmptyTrace(f"trace {t.case_id!r} has no events")
    candidates = _boundary_candidates(t, at_start)
    hi = int(any(label in e.labels for e in candidates))
    can_be_empty = all(e.indeterminate for e in t.events)
    lo = int(not can_be_empty and all(e.labels == {label} for e in candidates))
    return lo, hi


def start_activity_bounds(t: UncertainTrace, label: str) -> tuple[int, int]:
    """(1, 1) if every realization starts with ``label``, (0, 1) if some do, else (0, 0)."""
    return _boundary_bounds(t, label, at_start=True)


def end_activity_bounds(t: UncertainTrace, label: str) -> tuple[int, int]:
    return _boundary_bounds(t, label, at_start=False)


def gantt_rows(t: UncertainTrace) -> list[tuple]:
    return [(e.event_id, e.sorted_labels, e.t_min, e.t_max, e.indeterminate)
            for e in t.sorted_events()]
