"""Process mining over uncertain event data.

Typical use::

    from uncertain_proc import read_xes, build_behavior_graph, build_behavior_net

    log = read_xes("uncertain_event_log.xes")
    graph = build_behavior_graph(log.traces[0])
    net = build_behavior_net(graph)
"""

from .behavior_graph import BehaviorGraph, build_behavior_graph, canonical_form, group_variants
from .behavior_net import BehaviorNet, accepts, build_behavior_net
from .conformance import (Alignment, ConformanceBounds, align, bounds_exhaustive, bounds_log,
                          bounds_optimized)
from .discovery import UDFG, filter_udfg, trace_df_bounds, udfg, udfg_to_dot
from .errors import UncertainProcError
from .kernels import BACKEND
from .log import (TimeInterval, UncertainEvent, UncertainLog, UncertainTrace, activity_count_bounds,
                  end_activity_bounds, event, gantt_rows, is_uncertain_event, start_activity_bounds)
from .petri import Marking, PetriNet, Transition, enabled_transitions, fire, parse_pnml, sync_product, write_pnml
from .realizations import count as count_realizations
from .realizations import enumerate_realizations
from .simulation import UncertaintySpec, inject
from .stats import LogStatistics, log_statistics
from .xes import parse_xes, read_xes, write_xes

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Alignment", "BehaviorGraph", "BehaviorNet", "ConformanceBounds", "LogStatistics", "Marking",
    "PetriNet", "TimeInterval", "Transition", "UDFG", "UncertainEvent", "UncertainLog", "UncertainProcError",
    "UncertainTrace", "UncertaintySpec", "accepts", "activity_count_bounds", "align", "bounds_exhaustive",
    "bounds_log", "bounds_optimized", "build_behavior_graph", "build_behavior_net", "canonical_form",
    "count_realizations", "enabled_transitions", "end_activity_bounds", "enumerate_realizations", "event",
    "filter_udfg", "fire", "gantt_rows", "group_variants", "inject", "is_uncertain_event", "log_statistics",
    "parse_pnml", "parse_xes", "read_xes", "start_activity_bounds", "sync_product", "trace_df_bounds", "udfg",
    "udfg_to_dot", "write_pnml", "write_xes",
]
