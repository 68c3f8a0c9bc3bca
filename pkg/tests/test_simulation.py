import random

import pytest

from oracles import certain_trace

from uncertain_proc.errors import DictionaryTooSmall, InvalidSpec
from uncertain_proc.log import UncertainLog
from uncertain_proc.simulation import UncertaintySpec, inject
from uncertain_proc.xes import write_xes


def certain_log(n_traces, length, seed=0, alphabet="ABCDEFG"):
    rng = random.Random(seed)
    return UncertainLog([certain_trace([rng.choice(alphabet) for _ in range(length)], f"c{i}", start=1000 * i)
                         for i in range(n_traces)])


def pairs(a, b):
    for ta, tb in zip(a.traces, b.traces):
        yield from zip(ta.events, tb.events)


def test_identity_when_all_zero():
    log = certain_log(5, 6)
    assert inject(log, UncertaintySpec(seed=3)) == log


def test_deterministic():
    log = certain_log(10, 6)
    spec = UncertaintySpec(p_activity=0.5, p_timestamp=0.5, half_width=30, p_indeterminate=0.5, seed=99)
    assert write_xes(inject(log, spec)) == write_xes(inject(log, spec))
    other = inject(log, UncertaintySpec(p_activity=0.5, p_timestamp=0.5, half_width=30, p_indeterminate=0.5, seed=100))
    assert other != inject(log, spec)


def test_order_independent():
    log = certain_log(10, 5)
    spec = UncertaintySpec(p_activity=0.4, p_timestamp=0.4, half_width=10, p_indeterminate=0.4, seed=1)
    shuffled = UncertainLog(list(reversed(log.traces)))
    a = {t.case_id: t for t in inject(log, spec)}
    b = {t.case_id: t for t in inject(shuffled, spec)}
    assert a == b


def test_fixed_dictionary_all_events():
    log = certain_log(20, 5, alphabet="XYZ")
    out = inject(log, UncertaintySpec(p_activity=1.0, extra_labels=1, label_dictionary={"X", "Y", "Z"}, seed=5))
    for old, new in pairs(log, out):
        assert len(new.labels) == 2 and old.labels <= new.labels
    assert sum(1 for _ in pairs(log, out)) == 100


def test_conservative():
    log = certain_log(30, 8)
    out = inject(log, UncertaintySpec(p_activity=0.5, extra_labels=2, p_timestamp=0.5, half_width=500,
                                      p_indeterminate=0.5, seed=7))
    for old, new in pairs(log, out):
        assert old.labels <= new.labels
        assert new.time.contains(old.time)
        assert new.indeterminate or not old.indeterminate
        assert new.event_id == old.event_id


def test_errors():
    with pytest.raises(InvalidSpec):
        UncertaintySpec(p_activity=1.5)
    with pytest.raises(InvalidSpec):
        UncertaintySpec(half_width=-1)
    log = certain_log(2, 3, alphabet="A")
    with pytest.raises(DictionaryTooSmall):
        inject(log, UncertaintySpec(p_activity=1.0))
