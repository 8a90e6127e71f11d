# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: Sturm counts, batched bisection, period-run scan.

Signatures mirror :mod:`grigshift._pure`; :mod:`grigshift.kernels` picks one
of the two at import time.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


cdef void _counts(const double[::1] d, const double[::1] e2, const double[::1] x,
                  double pivmin, double[::1] q, cnp.int64_t[::1] cnt) noexcept nogil:
    cdef Py_ssize_t n = d.shape[0], m = x.shape[0]
    cdef Py_ssize_t i, j
    cdef double di, ei, qj
    for j in range(m):
        qj = d[0] - x[j]
        if fabs(qj) < pivmin:
            qj = -pivmin
        q[j] = qj
        cnt[j] = 1 if qj < 0.0 else 0
    for i in range(1, n):
        di = d[i]
        ei = e2[i - 1]
        for j in range(m):
            qj = (di - x[j]) - ei / q[j]
            if fabs(qj) < pivmin:
                qj = -pivmin
            q[j] = qj
            cnt[j] += qj < 0.0


def sturm_counts(const double[::1] d, const double[::1] e2, const double[::1] x, double pivmin):
    """Number of eigenvalues strictly below each shift in ``x``."""
    cdef Py_ssize_t m = x.shape[0]
    q = np.empty(m, dtype=np.float64)
    cnt = np.zeros(m, dtype=np.int64)
    cdef double[::1] qv = q
    cdef cnp.int64_t[::1] cv = cnt
    with nogil:
        _counts(d, e2, x, pivmin, qv, cv)
    return cnt


def bisect_all(const double[::1] d, const double[::1] e2, double lo, double hi,
               int n_iter, double pivmin):
    """Bisect every eigenvalue of the Jacobi matrix simultaneously.

    Each step evaluates the Sturm count only at distinct consecutive
    midpoints, so early steps (where many brackets coincide) are cheap.
    """
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t k, u, n_unique
    cdef int it
    lo_arr = np.full(n, lo, dtype=np.float64)
    hi_arr = np.full(n, hi, dtype=np.float64)
    mids = np.empty(n, dtype=np.float64)
    slot = np.empty(n, dtype=np.int64)
    q = np.empty(n, dtype=np.float64)
    cnt = np.zeros(n, dtype=np.int64)
    cdef double[::1] lv = lo_arr, hv = hi_arr, mv = mids, qv = q
    cdef cnp.int64_t[::1] sv = slot, cv = cnt
    cdef double mid, prev
    with nogil:
        for it in range(n_iter):
            n_unique = 0
            prev = 0.0
            for k in range(n):
                mid = 0.5 * (lv[k] + hv[k])
                if n_unique == 0 or mid != prev:
                    mv[n_unique] = mid
                    n_unique += 1
                    prev = mid
                sv[k] = n_unique - 1
            _counts(d, e2, mv[:n_unique], pivmin, qv[:n_unique], cv[:n_unique])
            for k in range(n):
                u = sv[k]
                if cv[u] > k:
                    hv[k] = mv[u]
                else:
                    lv[k] = mv[u]
    return 0.5 * (lo_arr + hi_arr)


def longest_period_runs(const unsigned char[::1] s, Py_ssize_t pmax):
    """For each period p in 1..pmax: longest run of j with s[j] == s[j+p].

    Returns ``(runs, starts)`` indexed by p (index 0 unused); a run of
    length r starting at j means s[j:j+r+p] has period p.
    """
    cdef Py_ssize_t n = s.shape[0]
    cdef Py_ssize_t p, j, cur, best, best_start, cur_start
    runs = np.zeros(pmax + 1, dtype=np.int64)
    starts = np.zeros(pmax + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] rv = runs, stv = starts
    with nogil:
        for p in range(1, pmax + 1):
            cur = 0
            best = 0
            best_start = 0
            cur_start = 0
            for j in range(n - p):
                if s[j] == s[j + p]:
                    if cur == 0:
                        cur_start = j
                    cur += 1
                    if cur > best:
                        best = cur
                        best_start = cur_start
                else:
                    cur = 0
            rv[p] = best
            stv[p] = best_start
    return runs, starts
