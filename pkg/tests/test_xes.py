from datetime import datetime, timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import day, running_example

from uncertain_proc.errors import (EmptyLabelSet, InvalidInterval, MalformedXml, MissingActivity, MissingTimestamp,
                                   TimestampConflict)
from uncertain_proc.log import TimeInterval, UncertainEvent, UncertainLog, UncertainTrace
from uncertain_proc.xes import XesId, parse_date, parse_xes, read_xes, write_xes


def wrap(event_xml: str) -> bytes:
    return f"""<?xml version="1.0" encoding="UTF-8"?>
<log xes.version="1.0" xmlns="http://www.xes-standard.org/">
  <extension name="Concept" prefix="concept" uri="http://www.xes-standard.org/concept.xesext"/>
  <global scope="event"><string key="concept:name" value="__INVALID__"/></global>
  <string key="concept:name" value="demo"/>
  <trace><string key="concept:name" value="ID192"/>
    <event>{event_xml}</event>
  </trace>
</log>""".encode()


def one_event(event_xml: str, **kw) -> UncertainEvent:
    return parse_xes(wrap(event_xml), **kw).traces[0].events[0]


def test_certain_event():
    e = one_event('<string key="concept:name" value="Adm"/><date key="time:timestamp" value="2021-07-12T00:00:00Z"/>')
    assert (e.labels, e.time, e.indeterminate) == ({"Adm"}, TimeInterval(day(12), day(12)), False)


def test_uncertain_activity():
    e = one_event('<list key="uncertainty:activity"><values><string key="a" value="PrTP"/>'
                  '<string key="a" value="SecTP"/></values></list>'
                  '<date key="time:timestamp" value="2021-07-08T00:00:00.000+00:00"/>')
    assert (e.labels, e.time, e.indeterminate) == ({"PrTP", "SecTP"}, TimeInterval(day(8), day(8)), False)


def test_uncertain_time_and_indeterminacy():
    e = one_event('<string key="concept:name" value="Splenomeg"/>'
                  '<date key="uncertainty:time:min" value="2021-07-04T02:00:00+02:00"/>'
                  '<date key="uncertainty:time:max" value="2021-07-10T00:00:00Z"/>'
                  '<boolean key="uncertainty:indeterminacy" value="true"/>')
    assert (e.labels, e.time, e.indeterminate) == ({"Splenomeg"}, TimeInterval(day(4), day(10)), True)


def test_extras_and_header_preserved():
    log = parse_xes(wrap('<string key="concept:name" value="A"/><date key="time:timestamp" value="2021-07-01"/>'
                         '<int key="cost" value="7"/><float key="w" value="0.1"/><id key="ref" value="abc"/>'
                         '<boolean key="ok" value="false"/><date key="due" value="2021-07-03T10:00:00.123456Z"/>'
                         '<list key="tags"><values><string key="t" value="x"/></values></list>'))
    e = log.traces[0].events[0]
    assert e.extra_attributes["cost"] == 7 and e.extra_attributes["w"] == 0.1
    assert isinstance(e.extra_attributes["ref"], XesId) and e.extra_attributes["ok"] is False
    assert log.attributes == {"concept:name": "demo"}
    assert len(log.preamble) == 2
    back = parse_xes(write_xes(log))
    assert back == log
    assert type(back.traces[0].events[0].extra_attributes["ref"]) is XesId
    assert write_xes(back) == write_xes(log)


@pytest.mark.parametrize("xml, err", [
    ('<date key="time:timestamp" value="2021-07-01"/>', MissingActivity),
    ('<string key="concept:name" value="A"/>', MissingTimestamp),
    ('<string key="concept:name" value="A"/><date key="uncertainty:time:min" value="2021-07-05"/>'
     '<date key="uncertainty:time:max" value="2021-07-04"/>', InvalidInterval),
    ('<list key="uncertainty:activity"><values/></list><date key="time:timestamp" value="2021-07-01"/>',
     EmptyLabelSet),
    ('<string key="concept:name" value="A"/><date key="time:timestamp" value="yesterday"/>', MalformedXml),
])
def test_errors(xml, err):
    with pytest.raises(err):
        one_event(xml)


def test_malformed_document():
    with pytest.raises(MalformedXml):
        parse_xes(b"<log><trace>")


def test_strict_vs_lenient():
    xml = ('<string key="concept:name" value="A"/><date key="time:timestamp" value="2021-07-20"/>'
           '<date key="uncertainty:time:min" value="2021-07-04"/><date key="uncertainty:time:max" value="2021-07-10"/>')
    with pytest.raises(TimestampConflict):
        one_event(xml)
    assert one_event(xml, strict=False).time == TimeInterval(day(4), day(10))


def test_dates():
    assert parse_date("2021-07-05T00:00:00Z") == datetime(2021, 7, 5, tzinfo=timezone.utc)
    assert parse_date("2021-07-05T01:30:00+01:30") == datetime(2021, 7, 5, tzinfo=timezone.utc)
    assert parse_date("2021-07-05T00:00:00.1234567-00:00").microsecond == 123456


def test_running_example_roundtrip(trace):
    log = UncertainLog([trace])
    assert parse_xes(write_xes(log)) == log


def test_empty_log():
    out = write_xes(UncertainLog())
    assert parse_xes(out) == UncertainLog()
    assert b"<trace" not in out


def test_shipped_running_example(data_dir):
    log = read_xes(data_dir / "running_example.xes")
    assert log.traces[0] == running_example()


def test_writer_schema(trace):
    out = write_xes(UncertainLog([trace])).decode()
    assert out.count('key="uncertainty:activity"') == 1
    assert out.count('key="uncertainty:time:min"') == 1
    assert out.count('key="uncertainty:indeterminacy"') == 1


# XML 1.0 cannot carry most control characters, so generated text stays printable
_text = st.text(st.characters(min_codepoint=0x20, max_codepoint=0xD7FF), max_size=6)
_labels = st.frozensets(st.text("ABCxyz é&<>\"", min_size=1, max_size=4), min_size=1, max_size=3)
_scalars = st.one_of(_text, st.integers(-10**12, 10**12), st.booleans(),
                     st.floats(allow_nan=False, allow_infinity=False))


@st.composite
def uncertain_logs(draw):
    traces = []
    for i in range(draw(st.integers(0, 3))):
        events = []
        for k in range(draw(st.integers(0, 4))):
            lo = draw(st.integers(-10**12, 10**13))
            hi = lo + draw(st.sampled_from([0, 0, draw(st.integers(0, 10**9))]))
            extras = draw(st.dictionaries(st.sampled_from(["org:resource", "cost", "note"]), _scalars, max_size=2))
            events.append(UncertainEvent(f"e{k}", draw(_labels), TimeInterval(lo, hi), draw(st.booleans()), extras))
        traces.append(UncertainTrace(f"case {i}", events, draw(st.dictionaries(st.just("age"), _scalars))))
    return UncertainLog(traces, draw(st.dictionaries(st.just("source"), _scalars)))


@settings(max_examples=100, deadline=None)
@given(uncertain_logs())
def test_roundtrip_property(log):
    assert parse_xes(write_xes(log)) == log
