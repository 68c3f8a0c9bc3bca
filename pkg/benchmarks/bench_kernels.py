"""Compare the compiled and pure-Python interval-order kernels.

    python3 benchmarks/bench_kernels.py [--sizes 1000 10000 100000] [--repeats 5]

Times the raw cover kernel on sorted bound arrays and the full
``build_behavior_graph`` (which adds sorting and object construction).
"""

import argparse
import os
import random
import subprocess
import sys
import timeit
from array import array

from uncertain_proc import _pykernels
from uncertain_proc.log import TimeInterval, UncertainEvent, UncertainTrace

try:
    from uncertain_proc import _ckernels
except ImportError:
    _ckernels = None


def bounds(n, seed=0):
    rng = random.Random(seed)
    pairs = []
    for k in range(n):
        lo = 10 * k + rng.randint(0, 5)
        pairs.append((lo, lo + (rng.randint(0, 40) if rng.random() < 0.5 else 0)))
    pairs.sort()
    return array("q", [p[0] for p in pairs]), array("q", [p[1] for p in pairs])


def trace(n, seed=0):
    tmin, tmax = bounds(n, seed)
    return UncertainTrace("bench", [UncertainEvent(f"e{k}", {"A"}, TimeInterval(lo, hi))
                                    for k, (lo, hi) in enumerate(zip(tmin, tmax))])


def best(stmt, repeats):
    return min(timeit.repeat(stmt, number=1, repeat=repeats))


def graph_time(n, repeats, pure):
    """build_behavior_graph in a subprocess so the backend is picked at import."""
    env = dict(os.environ, UNCERTAIN_PROC_PURE="1" if pure else "0")
    script = (
        "import timeit, sys\n"
        f"sys.path.insert(0, {os.path.dirname(os.path.abspath(__file__))!r})\n"
        "from bench_kernels import trace\n"
        "from uncertain_proc.behavior_graph import build_behavior_graph\n"
        "from uncertain_proc.kernels import BACKEND\n"
        f"t = trace({n})\n"
        f"print(BACKEND, min(timeit.repeat(lambda: build_behavior_graph(t), number=1, repeat={repeats})))\n"
    )
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    backend, seconds = out.stdout.split()
    return backend, float(seconds)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 10_000, 100_000])
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the pure-Python column is meaningful")

    print(f"{'n':>8} {'kernel py':>11} {'kernel c':>11} {'speedup':>8} {'graph py':>11} {'graph c':>11}")
    for n in args.sizes:
        tmin, tmax = bounds(n)
        py = best(lambda: _pykernels.interval_order_cover(tmin, tmax), args.repeats)
        if _ckernels is not None:
            c = best(lambda: _ckernels.interval_order_cover(tmin, tmax), args.repeats)
            assert _ckernels.interval_order_cover(tmin, tmax) == _pykernels.interval_order_cover(tmin, tmax)
        else:
            c = float("nan")
        _, gpy = graph_time(n, args.repeats, pure=True)
        backend, gc = graph_time(n, args.repeats, pure=False)
        gc_col = f"{gc * 1e3:9.2f}ms" if backend == "cython" else f"{'n/a':>11}"
        print(f"{n:>8} {py * 1e3:9.2f}ms {c * 1e3:9.2f}ms {py / c:7.1f}x {gpy * 1e3:9.2f}ms {gc_col}")


if __name__ == "__main__":
    main()
