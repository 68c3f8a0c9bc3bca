"""XES reading and writing with uncertainty meta-attributes.

Event-level keys understood on top of plain XES:

``uncertainty:activity``
    ``<list>`` of ``<string>`` values: the candidate labels (overrides
    ``concept:name``).
``uncertainty:time:min`` / ``uncertainty:time:max``
    ``<date>`` bounds of the timestamp interval (override ``time:timestamp``).
``uncertainty:indeterminacy``
    ``<boolean>``; ``true`` if the event may not have happened.

Event ids travel in ``identity:id``. Everything else is carried through
untouched in ``extra_attributes``.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from datetime import datetime, timedelta, timezone
from typing import Any

from .errors import (EmptyLabelSet, InvalidInterval, MalformedXml, MissingActivity, MissingTimestamp,
                     TimestampConflict)
from .log import TimeInterval, UncertainEvent, UncertainLog, UncertainTrace, from_millis, to_millis

KEY_NAME = "concept:name"
KEY_TIME = "time:timestamp"
KEY_ID = "identity:id"
KEY_U_ACTIVITY = "uncertainty:activity"
KEY_U_TMIN = "uncertainty:time:min"
KEY_U_TMAX = "uncertainty:time:max"
KEY_U_INDET = "uncertainty:indeterminacy"
_RESERVED = {KEY_NAME, KEY_TIME, KEY_ID, KEY_U_ACTIVITY, KEY_U_TMIN, KEY_U_TMAX, KEY_U_INDET}

_ATTR_TAGS = {"string", "date", "int", "float", "boolean", "id", "list", "container"}
_HEADER_TAGS = {"extension", "global", "classifier"}


class XesId(str):
    """String value that was typed ``<id>`` in the source document."""


class RawAttribute(str):
    """Nested (list/container) attribute kept as its serialized XML."""


_DATE_RE = re.compile(
    r"^(\d{4})-(\d{2})-(\d{2})(?:[T ](\d{2}):(\d{2})(?::(\d{2})(?:[.,](\d+))?)?)?\s*(Z|[+-]\d{2}:?\d{2})?$")


def parse_date(text: str) -> datetime:
    """ISO-8601 to an aware UTC datetime; no zone means UTC."""
    m = _DATE_RE.match(text.strip())
    if not m:
        raise MalformedXml(f"unparseable date {text!r}")
    y, mo, d, hh, mm, ss, frac, tz = m.groups()
    micros = int((frac or "0")[:6].ljust(6, "0"))
    dt = datetime(int(y), int(mo), int(d), int(hh or 0), int(mm or 0), int(ss or 0), micros)
    offset = timedelta(0)
    if tz and tz != "Z":
        sign = -1 if tz[0] == "-" else 1
        digits = tz[1:].replace(":", "")
        offset = sign * timedelta(hours=int(digits[:2]), minutes=int(digits[2:]))
    return (dt - offset).replace(tzinfo=timezone.utc)


def format_date(value: datetime | int) -> str:
    if isinstance(value, int):
        dt = from_millis(value)
        return dt.strftime("%Y-%m-%dT%H:%M:%S.") + f"{dt.microsecond // 1000:03d}+00:00"
    if value.tzinfo is None:
        value = value.replace(tzinfo=timezone.utc)
    return value.astimezone(timezone.utc).isoformat()


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _strip_ns(el: ET.Element) -> ET.Element:
    for node in el.iter():
        node.tag = _local(node.tag)
    return el


def _raw(el: ET.Element) -> str:
    """Compact serialization; indentation is not part of the value."""
    for node in _strip_ns(el).iter():
        if node.text is not None and not node.text.strip():
            node.text = None
        node.tail = None
    return ET.tostring(el, encoding="unicode")


def _scalar(el: ET.Element) -> Any:
    kind, value = _local(el.tag), el.get("value")
    if kind in ("list", "container"):
        return RawAttribute(_raw(el))
    if value is None:
        raise MalformedXml(f"attribute {el.get('key')!r} has no value")
    try:
        if kind == "int":
            return int(value)
        if kind == "float":
            return float(value)
    except ValueError as exc:
        raise MalformedXml(f"bad {kind} value {value!r}") from exc
    if kind == "boolean":
        return value.strip().lower() == "true"
    if kind == "date":
        return parse_date(value)
    if kind == "id":
        return XesId(value)
    return value


def _attributes(el: ET.Element) -> dict:
    out = {}
    for c in el:
        if _local(c.tag) in _ATTR_TAGS and c.get("key") is not None:
            out[c.get("key")] = c
    return out


def _list_values(el: ET.Element) -> list:
    holders = [c for c in el if _local(c.tag) == "values"] or [el]
    return [c.get("value") for h in holders for c in h if _local(c.tag) in _ATTR_TAGS and c.get("value") is not None]


def _date_ms(el: ET.Element) -> int:
    return to_millis(parse_date(el.get("value", "")))


def _parse_event(el: ET.Element, index: int, case_id: str, strict: bool) -> UncertainEvent:
    attrs = _attributes(el)
    where = f"event {index} of trace {case_id!r}"

    if KEY_U_ACTIVITY in attrs:
        labels = _list_values(attrs[KEY_U_ACTIVITY])
        if not labels:
            raise EmptyLabelSet(f"{where}: empty {KEY_U_ACTIVITY}")
    elif KEY_NAME in attrs:
        labels = [attrs[KEY_NAME].get("value")]
    else:
        raise MissingActivity(f"{where}: no {KEY_NAME} and no {KEY_U_ACTIVITY}")

    has_min, has_max = KEY_U_TMIN in attrs, KEY_U_TMAX in attrs
    if has_min != has_max:
        raise MissingTimestamp(f"{where}: only one interval bound given")
    if has_min:
        lo, hi = _date_ms(attrs[KEY_U_TMIN]), _date_ms(attrs[KEY_U_TMAX])
        if lo > hi:
            raise InvalidInterval(f"{where}: {KEY_U_TMIN} is after {KEY_U_TMAX}")
        if strict and KEY_TIME in attrs and not lo <= _date_ms(attrs[KEY_TIME]) <= hi:
            raise TimestampConflict(f"{where}: {KEY_TIME} lies outside the declared interval")
        time = TimeInterval(lo, hi)
    elif KEY_TIME in attrs:
        time = TimeInterval.point(_date_ms(attrs[KEY_TIME]))
    else:
        raise MissingTimestamp(f"{where}: no {KEY_TIME}")

    indeterminate = False
    if KEY_U_INDET in attrs:
        indeterminate = attrs[KEY_U_INDET].get("value", "").strip().lower() == "true"

    event_id = attrs[KEY_ID].get("value") if KEY_ID in attrs else f"e{index + 1}"
    extras = {k: _scalar(v) for k, v in attrs.items() if k not in _RESERVED}
    return UncertainEvent(event_id, labels, time, indeterminate, extras)


def parse_xes(data: bytes | str, strict: bool = True) -> UncertainLog:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXml(str(exc)) from exc
    if _local(root.tag) != "log":
        raise MalformedXml(f"root element is <{_local(root.tag)}>, expected <log>")

    preamble = [_raw(c) for c in root if _local(c.tag) in _HEADER_TAGS]
    log_attrs = {k: _scalar(v) for k, v in _attributes(root).items()}
    traces = []
    for i, t in enumerate(c for c in root if _local(c.tag) == "trace"):
        attrs = _attributes(t)
        case_id = attrs[KEY_NAME].get("value") if KEY_NAME in attrs else f"trace{i + 1}"
        events = [_parse_event(e, k, case_id, strict)
                  for k, e in enumerate(c for c in t if _local(c.tag) == "event")]
        trace_attrs = {k: _scalar(v) for k, v in attrs.items() if k != KEY_NAME}
        traces.append(UncertainTrace(case_id, events, trace_attrs))
    return UncertainLog(traces, log_attrs, preamble)


def read_xes(path, strict: bool = True) -> UncertainLog:
    with open(path, "rb") as fh:
        return parse_xes(fh.read(), strict=strict)


# -- writing ------------------------------------------------------------------

def _emit(parent: ET.Element, key: str, value: Any) -> None:
    if isinstance(value, RawAttribute):
        el = ET.fromstring(str(value))
        el.set("key", key)
        parent.append(el)
        return
    if isinstance(value, bool):
        kind, text = "boolean", "true" if value else "false"
    elif isinstance(value, int):
        kind, text = "int", str(value)
    elif isinstance(value, float):
        kind, text = "float", repr(value)
    elif isinstance(value, datetime):
        kind, text = "date", format_date(value)
    elif isinstance(value, XesId):
        kind, text = "id", str(value)
    else:
        kind, text = "string", str(value)
    ET.SubElement(parent, kind, key=key, value=text)


def _write_event(parent: ET.Element, e: UncertainEvent) -> None:
    el = ET.SubElement(parent, "event")
    labels = e.sorted_labels
    ET.SubElement(el, "string", key=KEY_NAME, value=labels[0])
    if len(labels) > 1:
        lst = ET.SubElement(el, "list", key=KEY_U_ACTIVITY)
        values = ET.SubElement(lst, "values")
        for a in labels:
            ET.SubElement(values, "string", key="activity", value=a)
    # interval events also carry time:timestamp = t_min for tools that need one
    ET.SubElement(el, "date", key=KEY_TIME, value=format_date(e.t_min))
    if not e.time.is_certain:
        ET.SubElement(el, "date", key=KEY_U_TMIN, value=format_date(e.t_min))
        ET.SubElement(el, "date", key=KEY_U_TMAX, value=format_date(e.t_max))
    if e.indeterminate:
        ET.SubElement(el, "boolean", key=KEY_U_INDET, value="true")
    ET.SubElement(el, "string", key=KEY_ID, value=e.event_id)
    for k in sorted(e.extra_attributes):
        _emit(el, k, e.extra_attributes[k])


def write_xes(log: UncertainLog) -> bytes:
    root = ET.Element("log", {"xes.version": "1.0", "xes.features": "nested-attributes"})
    for raw in log.preamble:
        root.append(ET.fromstring(raw))
    for k in sorted(log.attributes):
        _emit(root, k, log.attributes[k])
    for t in log.traces:
        t_el = ET.SubElement(root, "trace")
        ET.SubElement(t_el, "string", key=KEY_NAME, value=t.case_id)
        for k in sorted(t.attributes):
            _emit(t_el, k, t.attributes[k])
        for e in t.events:
            _write_event(t_el, e)
    ET.indent(root)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


def write_xes_file(log: UncertainLog, path) -> None:
    with open(path, "wb") as fh:
        fh.write(write_xes(log))
