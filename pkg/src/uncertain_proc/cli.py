"""Command-line interface.

Exit codes: 0 success, 1 domain error (JSON error object on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import behavior_graph as bg
from . import conformance, discovery, realizations, simulation, stats, xes
from .behavior_net import build_behavior_net
from .errors import TraceNotFound, UncertainProcError
from .log import UncertainLog, UncertainTrace, gantt_rows
from .petri import parse_pnml, write_pnml

FORMATS = {
    "stats": ["json"],
    "variants": ["json", "text"],
    "graph": ["json", "dot"],
    "net": ["json", "dot", "pnml"],
    "realizations": ["json", "text"],
    "align": ["json"],
    "udfg": ["json", "dot"],
    "simulate": ["xes"],
    "gantt": ["json"],
}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def _load_log(args) -> UncertainLog:
    return xes.read_xes(args.log, strict=not args.lenient)


def _select(log: UncertainLog, args) -> UncertainTrace:
    if args.case is not None:
        return log.trace(args.case)
    if not 0 <= args.index < len(log.traces):
        raise TraceNotFound(f"trace index {args.index} out of range (log has {len(log.traces)} traces)")
    return log.traces[args.index]


def _traces(log: UncertainLog, args) -> list:
    if args.case is not None:
        return [log.trace(args.case)]
    return list(log.traces)


# -- subcommands --------------------------------------------------------------

def cmd_stats(args):
    return _dump(stats.log_statistics(_load_log(args)).to_json())


def cmd_variants(args):
    groups = bg.group_variants(_load_log(args))
    if args.format == "text":
        return "".join(f"{bg.form_digest(form)}\t{len(cases)}\t{','.join(cases)}\n" for form, cases in groups)
    return _dump([{"id": bg.form_digest(form), "size": len(cases), "cases": cases} for form, cases in groups])


def cmd_graph(args):
    g = bg.build_behavior_graph(_select(_load_log(args), args))
    return bg.to_dot(g) if args.format == "dot" else _dump(g.to_json())


def cmd_net(args):
    bn = build_behavior_net(_select(_load_log(args), args))
    if args.format == "dot":
        return bn.to_dot()
    if args.format == "pnml":
        return write_pnml(bn.net)
    net = bn.net
    return _dump({
        "places": sorted(net.places),
        "transitions": [{"id": t.id, "label": t.label, "event_id": bn.provenance[t.id][0]}
                        for t in net.sorted_transitions],
        "arcs": [list(a) for a in sorted(net.arcs)],
        "initial_marking": dict(sorted(net.initial_marking.items())),
        "final_marking": dict(sorted(net.final_marking.items())),
    })


def cmd_realizations(args):
    trace = _select(_load_log(args), args)
    rs = realizations.enumerate_realizations(trace, args.cap)
    if args.format == "text":
        return "".join(" ".join(r) + "\n" for r in rs)
    return _dump([list(r) for r in rs])


def cmd_align(args):
    log = _load_log(args)
    with open(args.model, "rb") as fh:
        model = parse_pnml(fh.read())
    results = conformance.bounds_log(_traces(log, args), model, mode=args.mode, cap=args.cap,
                                     max_states=args.max_states, jobs=args.jobs)
    return _dump([r.to_dict() for r in results])


def cmd_udfg(args):
    u = discovery.udfg(_load_log(args), args.cap)
    u = discovery.filter_udfg(u, args.act_threshold, args.edge_threshold, args.semantics)
    return discovery.udfg_to_dot(u) if args.format == "dot" else _dump(u.to_json())


def cmd_simulate(args):
    spec = simulation.UncertaintySpec(
        p_activity=args.p_activity,
        extra_labels=args.extra_labels,
        label_dictionary=frozenset(args.labels.split(",")) if args.labels else simulation.DERIVE_FROM_LOG,
        p_timestamp=args.p_timestamp,
        half_width=args.half_width,
        p_indeterminate=args.p_indeterminate,
        seed=args.seed,
    )
    return xes.write_xes(simulation.inject(_load_log(args), spec))


def cmd_gantt(args):
    trace = _select(_load_log(args), args)
    return _dump([{"event_id": ev, "labels": list(labels), "t_min": lo, "t_max": hi, "indeterminate": ind}
                  for ev, labels, lo, hi, ind in gantt_rows(trace)])


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uncertain-proc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, trace=False, multi=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("log", help="uncertain event log (XES)")
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        p.add_argument("--format", choices=FORMATS[name], default=FORMATS[name][0])
        p.add_argument("--lenient", action="store_true",
                       help="prefer interval attributes over a conflicting time:timestamp")
        if trace or multi:
            sel = p.add_mutually_exclusive_group()
            sel.add_argument("--case", help="case id of the trace")
            if trace:
                sel.add_argument("--index", type=int, default=0, help="trace position (default 0)")
        p.set_defaults(func=func)
        return p

    def cap_arg(p):
        p.add_argument("--cap", type=int, default=None,
                       help="max distinct realizations per trace (default 10000, env UNCERTAIN_PROC_CAP)")

    add("stats", cmd_stats, "log statistics (sizes, uncertainty shares, variants, activity tables)")
    add("variants", cmd_variants, "uncertain variants (isomorphic behavior graphs)")
    add("graph", cmd_graph, "behavior graph of one trace", trace=True)
    add("net", cmd_net, "behavior net of one trace", trace=True)
    cap_arg(add("realizations", cmd_realizations, "realizations of one trace", trace=True))
    p = add("align", cmd_align, "conformance bounds against a PNML model", multi=True)
    p.add_argument("model", help="normative model (PNML)")
    p.add_argument("--mode", choices=["exhaustive", "optimized"], default="exhaustive")
    p.add_argument("--max-states", type=int, default=conformance.DEFAULT_MAX_STATES)
    p.add_argument("--jobs", type=int, default=1)
    cap_arg(p)
    p = add("udfg", cmd_udfg, "uncertain directly-follows graph")
    p.add_argument("--act-threshold", type=int, default=0)
    p.add_argument("--edge-threshold", type=int, default=0)
    p.add_argument("--semantics", choices=[discovery.MIN, discovery.MAX], default=discovery.MIN)
    cap_arg(p)
    p = add("simulate", cmd_simulate, "inject uncertainty into a log")
    p.add_argument("--p-activity", type=float, default=0.0)
    p.add_argument("--extra-labels", type=int, default=1)
    p.add_argument("--labels", help="comma-separated label dictionary (default: labels of the log)")
    p.add_argument("--p-timestamp", type=float, default=0.0)
    p.add_argument("--half-width", type=int, default=0, help="interval half width in milliseconds")
    p.add_argument("--p-indeterminate", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    add("gantt", cmd_gantt, "interval rows of one trace", trace=True)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, stream=stderr)
    try:
        out = args.func(args)
    except UncertainProcError as exc:
        stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 1
    except OSError as exc:
        stderr.write(json.dumps({"error": "io_error", "message": str(exc)}) + "\n")
        return 1
    data = out.encode() if isinstance(out, str) else out
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    elif hasattr(stdout, "buffer"):
        stdout.flush()
        stdout.buffer.write(data)
        stdout.buffer.flush()
    else:
        stdout.write(data.decode())
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
