# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel backend: subsequence supports and residual scans.

Same contracts as ``_ref``; rows are addressed either densely or through the
set bits of a packed parent support, so child evaluation only ever touches
rows the parent already matched.
"""

import numpy as np

BACKEND = "fast"

ctypedef unsigned long long u64

cdef extern from *:
    """
    static inline int ordboost_ctz64(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int ordboost_ctz64(u64 x) nogil


cdef inline bint _row_fulfills(const int[:, ::1] pos, Py_ssize_t r,
                               const int[::1] items, Py_ssize_t k) nogil:
    cdef Py_ssize_t t
    cdef int prev = pos[r, items[0]]
    cdef int cur
    for t in range(1, k):
        cur = pos[r, items[t]]
        if prev >= cur:
            return 0
        prev = cur
    return 1


def support_words(const int[:, ::1] pos, const int[::1] items, object within=None):
    """Support of one constraint (0-based item columns) as packed words."""
    cdef Py_ssize_t m = pos.shape[0]
    cdef Py_ssize_t k = items.shape[0]
    cdef Py_ssize_t nw = (m + 63) >> 6
    out_arr = np.zeros(nw, dtype=np.uint64)
    cdef u64[::1] out = out_arr
    cdef const u64[::1] base
    cdef Py_ssize_t r, w
    cdef u64 word
    cdef long long cnt = 0
    if within is None:
        for r in range(m):
            if _row_fulfills(pos, r, items, k):
                out[r >> 6] |= (<u64>1) << (r & 63)
                cnt += 1
    else:
        base = within
        for w in range(nw):
            word = base[w]
            while word:
                r = (w << 6) + ordboost_ctz64(word)
                word &= word - 1
                if _row_fulfills(pos, r, items, k):
                    out[r >> 6] |= (<u64>1) << (r & 63)
                    cnt += 1
    return out_arr, int(cnt)


def masked_stats(const u64[::1] words, const double[::1] delta):
    """(signed residual sum, popcount, positive mass, negative mass) over set bits."""
    cdef Py_ssize_t nw = words.shape[0]
    cdef Py_ssize_t r, w
    cdef u64 word
    cdef double d, signed = 0.0, pmass = 0.0, nmass = 0.0
    cdef long long cnt = 0
    for w in range(nw):
        word = words[w]
        while word:
            r = (w << 6) + ordboost_ctz64(word)
            word &= word - 1
            d = delta[r]
            signed += d
            cnt += 1
            if d > 0.0:
                pmass += d
            elif d < 0.0:
                nmass -= d
    return signed, int(cnt), pmass, nmass


def eval_candidates(const int[:, ::1] pos, const double[::1] delta,
                    const int[:, ::1] cands, object within=None):
    """Score a batch of equal-length candidates (0-based (q, k) item matrix).

    Returns per-candidate signed residual sums, support sizes, and the
    positive/negative residual masses over the support.
    """
    cdef Py_ssize_t m = pos.shape[0]
    cdef Py_ssize_t q = cands.shape[0]
    cdef Py_ssize_t k = cands.shape[1]
    cdef Py_ssize_t nw = (m + 63) >> 6
    signed_arr = np.zeros(q, dtype=np.float64)
    count_arr = np.zeros(q, dtype=np.int64)
    pmass_arr = np.zeros(q, dtype=np.float64)
    nmass_arr = np.zeros(q, dtype=np.float64)
    cdef double[::1] signed = signed_arr
    cdef long long[::1] count = count_arr
    cdef double[::1] pmass = pmass_arr
    cdef double[::1] nmass = nmass_arr
    cdef const u64[::1] base
    cdef Py_ssize_t j, r, w, t
    cdef u64 word
    cdef int prev, cur
    cdef bint ok
    cdef double d, s, pm, nm
    cdef long long cnt
    if within is None:
        for j in range(q):
            s = 0.0
            pm = 0.0
            nm = 0.0
            cnt = 0
            for r in range(m):
                prev = pos[r, cands[j, 0]]
                ok = 1
                for t in range(1, k):
                    cur = pos[r, cands[j, t]]
                    if prev >= cur:
                        ok = 0
                        break
                    prev = cur
                if ok:
                    d = delta[r]
                    s += d
                    cnt += 1
                    if d > 0.0:
                        pm += d
                    elif d < 0.0:
                        nm -= d
            signed[j] = s
            count[j] = cnt
            pmass[j] = pm
            nmass[j] = nm
    else:
        base = within
        for j in range(q):
            s = 0.0
            pm = 0.0
            nm = 0.0
            cnt = 0
            for w in range(nw):
                word = base[w]
                while word:
                    r = (w << 6) + ordboost_ctz64(word)
                    word &= word - 1
                    prev = pos[r, cands[j, 0]]
                    ok = 1
                    for t in range(1, k):
                        cur = pos[r, cands[j, t]]
                        if prev >= cur:
                            ok = 0
                            break
                        prev = cur
                    if ok:
                        d = delta[r]
                        s += d
                        cnt += 1
                        if d > 0.0:
                            pm += d
                        elif d < 0.0:
                            nm -= d
            signed[j] = s
            count[j] = cnt
            pmass[j] = pm
            nmass[j] = nm
    return signed_arr, count_arr, pmass_arr, nmass_arr
