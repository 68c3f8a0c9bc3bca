"""Log-level summary: sizes, uncertainty shares, variants, min/max activity tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .behavior_graph import form_digest, group_variants
from .log import (UncertainLog, activity_count_bounds, end_activity_bounds, is_uncertain_event,
                  is_uncertain_trace, start_activity_bounds)


@dataclass(frozen=True)
class LogStatistics:
    n_traces: int = 0
    n_events: int = 0
    mean_trace_length: Fraction = Fraction(0)
    n_uncertain_events: int = 0
    n_uncertain_traces: int = 0
    n_variants: int = 0
    activity_counts: dict = field(default_factory=dict)
    start_activity_counts: dict = field(default_factory=dict)
    end_activity_counts: dict = field(default_factory=dict)
    variants: tuple = ()  # (digest, case ids), largest first

    def to_json(self) -> dict:
        def table(d):
            return {a: {"min": lo, "max": hi} for a, (lo, hi) in sorted(d.items())}

        def share(k, n):
            return k / n if n else 0.0

        return {
            "n_traces": self.n_traces,
            "n_events": self.n_events,
            "mean_trace_length": float(self.mean_trace_length),
            "n_uncertain_events": self.n_uncertain_events,
            "n_uncertain_traces": self.n_uncertain_traces,
            "uncertain_event_share": share(self.n_uncertain_events, self.n_events),
            "uncertain_trace_share": share(self.n_uncertain_traces, self.n_traces),
            "n_variants": self.n_variants,
            "variants": [{"id": d, "size": len(cases), "cases": list(cases)} for d, cases in self.variants],
            "activity_counts": table(self.activity_counts),
            "start_activity_counts": table(self.start_activity_counts),
            "end_activity_counts": table(self.end_activity_counts),
        }


def _accumulate(acc: dict, label: str, bounds: tuple) -> None:
    lo, hi = acc.get(label, (0, 0))
    acc[label] = (lo + bounds[0], hi + bounds[1])


def log_statistics(log: UncertainLog) -> LogStatistics:
    acts, starts, ends = {}, {}, {}
    n_events = n_unc_events = n_unc_traces = 0
    for t in log.traces:
        n_events += len(t.events)
        n_unc_events += sum(1 for e in t.events if is_uncertain_event(e))
        n_unc_traces += is_uncertain_trace(t)
        labels = sorted({a for e in t.events for a in e.labels})
        for a in labels:
            _accumulate(acts, a, activity_count_bounds(t, a))
            _accumulate(starts, a, start_activity_bounds(t, a))
            _accumulate(ends, a, end_activity_bounds(t, a))
    # labels that can never open / close a trace are dropped from those tables
    starts = {a: v for a, v in starts.items() if v[1]}
    ends = {a: v for a, v in ends.items() if v[1]}
    variants = group_variants(log)
    n = len(log.traces)
    return LogStatistics(
        n_traces=n,
        n_events=n_events,
        mean_trace_length=Fraction(n_events, n) if n else Fraction(0),
        n_uncertain_events=n_unc_events,
        n_uncertain_traces=n_unc_traces,
        n_variants=len(variants),
        activity_counts=acts,
        start_activity_counts=starts,
        end_activity_counts=ends,
        variants=tuple((form_digest(form), tuple(cases)) for form, cases in variants),
    )
