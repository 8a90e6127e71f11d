"""Numpy implementations of the kernels in ``_core.pyx``.

Loops run over matrix rows (or periods) in Python and vectorize across
shifts (or positions), which keeps the fallback usable up to a few
thousand rows.
"""
import numpy as np


def sturm_counts(d, e2, x, pivmin):
    """Number of eigenvalues strictly below each shift in ``x``."""
    x = np.asarray(x, dtype=np.float64)
    q = d[0] - x
    q[np.abs(q) < pivmin] = -pivmin
    cnt = (q < 0).astype(np.int64)
    for i in range(1, len(d)):
        q = (d[i] - x) - e2[i - 1] / q
        q[np.abs(q) < pivmin] = -pivmin
        cnt += q < 0
    return cnt


def bisect_all(d, e2, lo, hi, n_iter, pivmin):
    n = len(d)
    lo_arr = np.full(n, lo, dtype=np.float64)
    hi_arr = np.full(n, hi, dtype=np.float64)
    k = np.arange(n)
    for _ in range(n_iter):
        mid = 0.5 * (lo_arr + hi_arr)
        uniq, slot = np.unique(mid, return_inverse=True)
        below = sturm_counts(d, e2, uniq, pivmin)[slot] > k
        hi_arr = np.where(below, mid, hi_arr)
        lo_arr = np.where(below, lo_arr, mid)
    return 0.5 * (lo_arr + hi_arr)


def longest_period_runs(s, pmax):
    s = np.asarray(s, dtype=np.uint8)
    n = len(s)
    runs = np.zeros(pmax + 1, dtype=np.int64)
    starts = np.zeros(pmax + 1, dtype=np.int64)
    for p in range(1, min(pmax, n - 1) + 1):
        eq = np.concatenate(([False], s[:-p] == s[p:], [False])).astype(np.int8)
        edges = np.diff(eq)
        begin = np.flatnonzero(edges == 1)
        end = np.flatnonzero(edges == -1)
        if len(begin) == 0:
            continue
        lengths = end - begin
        best = int(np.argmax(lengths))
        runs[p] = lengths[best]
        starts[p] = begin[best]
    return runs, starts
