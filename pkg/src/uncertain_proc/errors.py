"""Exception hierarchy.

Every error carries a short machine-readable ``code`` which the CLI puts in
its JSON error object.
"""


class UncertainProcError(Exception):
    code = "error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class EmptyTrace(UncertainProcError, ValueError):
    code = "empty_trace"


class InvalidInterval(UncertainProcError, ValueError):
    code = "invalid_interval"


class EmptyLabelSet(UncertainProcError, ValueError):
    code = "empty_label_set"


class DuplicateId(UncertainProcError, ValueError):
    code = "duplicate_id"


# -- XES / PNML ---------------------------------------------------------------

class MalformedXml(UncertainProcError, ValueError):
    code = "malformed_xml"


class MissingActivity(UncertainProcError, ValueError):
    code = "missing_activity"


class MissingTimestamp(UncertainProcError, ValueError):
    code = "missing_timestamp"


class TimestampConflict(UncertainProcError, ValueError):
    """Strict mode: ``time:timestamp`` lies outside the declared interval."""
    code = "timestamp_conflict"


class NoNet(UncertainProcError, ValueError):
    code = "no_net"


class DisconnectedArcEndpoint(UncertainProcError, ValueError):
    code = "disconnected_arc_endpoint"


# -- Petri nets / search ------------------------------------------------------

class InvalidNet(UncertainProcError, ValueError):
    code = "invalid_net"


class NotEnabled(UncertainProcError, ValueError):
    code = "not_enabled"


class Unreachable(UncertainProcError):
    code = "unreachable"


class StateSpaceExceeded(UncertainProcError):
    code = "state_space_exceeded"


class CapExceeded(UncertainProcError):
    code = "cap_exceeded"


# -- simulation ---------------------------------------------------------------

class InvalidSpec(UncertainProcError, ValueError):
    code = "invalid_spec"


class DictionaryTooSmall(UncertainProcError, ValueError):
    code = "dictionary_too_small"


class TraceNotFound(UncertainProcError, LookupError):
    code = "trace_not_found"
