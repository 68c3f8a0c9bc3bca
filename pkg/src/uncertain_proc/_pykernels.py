"""Pure-Python kernels; reference behaviour for the compiled ``_ckernels``."""

from array import array
from bisect import bisect_right


def interval_order_cover(tmin, tmax):
    """Cover (Hasse) edges of the strict interval order ``u < v iff tmax[u] < tmin[v]``.

    Inputs must be sorted by ``tmin`` ascending. Returns ``(src, dst)`` as two
    ``array('q')`` of equal length, sorted by ``(src, dst)``.

    ``(u, v)`` is a cover edge iff ``tmax[u] < tmin[v] <= m(u)`` where ``m(u)``
    is the smallest ``tmax`` among intervals starting after ``tmax[u]``; for a
    fixed ``u`` those ``v`` form one contiguous run of the ``tmin`` order.
    """
    n = len(tmin)
    if len(tmax) != n:
        raise ValueError("tmin and tmax differ in length")
    suffix = [0] * (n + 1)
    best = None
    for k in range(n - 1, -1, -1):
        v = tmax[k]
        best = v if best is None or v < best else best
        suffix[k] = best
    src = array("q")
    dst = array("q")
    for u in range(n):
        lo = bisect_right(tmin, tmax[u])
        if lo == n:
            continue
        hi = bisect_right(tmin, suffix[lo], lo)
        src.extend([u] * (hi - lo))
        dst.extend(range(lo, hi))
    return src, dst


def precedence_pairs(tmin, tmax):
    """All pairs ``(u, v)`` with ``tmax[u] < tmin[v]``; input sorted by ``tmin``."""
    n = len(tmin)
    src = array("q")
    dst = array("q")
    for u in range(n):
        lo = bisect_right(tmin, tmax[u])
        src.extend([u] * (n - lo))
        dst.extend(range(lo, n))
    return src, dst



