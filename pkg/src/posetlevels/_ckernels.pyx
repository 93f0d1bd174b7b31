# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same signatures and results as ``_pykernels``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def level_sweep(const unsigned char[:, ::1] lt):
    cdef Py_ssize_t n = lt.shape[0]
    cdef i64[::1] below = np.zeros(n, dtype=np.int64)
    level_arr = np.full(n, -1, dtype=np.int64)
    pred_arr = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] level = level_arr
    cdef i64[::1] pred = pred_arr
    cdef i64[::1] cur = np.empty(n, dtype=np.int64)
    cdef i64[::1] nxt = np.empty(n, dtype=np.int64)
    cdef i64[::1] tmp
    cdef Py_ssize_t i, j, z, ncur = 0, nnext
    cdef i64 x, lvl = 0
    for i in range(n):
        for j in range(n):
            if lt[i, j]:
                below[j] += 1
    for i in range(n):
        if below[i] == 0:
            cur[ncur] = i
            ncur += 1
    while ncur > 0:
        for i in range(ncur):
            level[cur[i]] = lvl
        nnext = 0
        for i in range(ncur):
            x = cur[i]
            for z in range(n):
                if lt[x, z]:
                    pred[z] = x
                    below[z] -= 1
                    if below[z] == 0:
                        nxt[nnext] = z
                        nnext += 1
        _sort(nxt, nnext)
        tmp = cur
        cur = nxt
        nxt = tmp
        ncur = nnext
        lvl += 1
    return level_arr, pred_arr


cdef void _sort(i64[::1] a, Py_ssize_t m) noexcept nogil:
    # insertion sort; level sets arrive nearly sorted
    cdef Py_ssize_t i, j
    cdef i64 v
    for i in range(1, m):
        v = a[i]
        j = i - 1
        while j >= 0 and a[j] > v:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = v


def slc_sweep(const unsigned char[:, ::1] lt, order):
    cdef Py_ssize_t n = lt.shape[0]
    cdef const i64[::1] ordv = np.ascontiguousarray(order, dtype=np.int64)
    slc_arr = np.ones(n, dtype=np.int64)
    succ_arr = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] slc = slc_arr
    cdef i64[::1] succ = succ_arr
    cdef Py_ssize_t pos, y
    cdef i64 x, best, arg
    for pos in range(n - 1, -1, -1):
        x = ordv[pos]
        best = 0
        arg = -1
        for y in range(n):
            if lt[x, y] and slc[y] > best:
                best = slc[y]
                arg = y
        slc[x] = best + 1
        succ[x] = arg
    return slc_arr, succ_arr


def scan_chain_antichain(const unsigned char[:, ::1] lt, order, starts, Py_ssize_t s, Py_ssize_t r):
    cdef const i64[::1] ordv = np.ascontiguousarray(order, dtype=np.int64)
    cdef const i64[::1] st = np.ascontiguousarray(starts, dtype=np.int64)
    cdef Py_ssize_t h = st.shape[0] - 1
    cdef i64[::1] ys = np.empty(max(r, 1), dtype=np.int64)
    cdef Py_ssize_t l, base, pos, q, found
    cdef i64 x, y
    for l in range(s - 1, h):
        base = l - s + 1
        for pos in range(st[l], st[l + 1]):
            x = ordv[pos]
            found = 0
            if r > 0:
                for q in range(st[base], st[base + 1]):
                    y = ordv[q]
                    if y != x and not lt[x, y] and not lt[y, x]:
                        ys[found] = y
                        found += 1
                        if found == r:
                            break
            if found == r:
                return int(x), [int(ys[q]) for q in range(r)]
    return None


def scan_based11(const unsigned char[:, ::1] lt, level, order, starts, slc, Py_ssize_t k):
    cdef const i64[::1] lev = np.ascontiguousarray(level, dtype=np.int64)
    cdef const i64[::1] ordv = np.ascontiguousarray(order, dtype=np.int64)
    cdef const i64[::1] st = np.ascontiguousarray(starts, dtype=np.int64)
    cdef const i64[::1] sl = np.ascontiguousarray(slc, dtype=np.int64)
    cdef Py_ssize_t n = ordv.shape[0]
    cdef Py_ssize_t pos, l, q
    cdef i64 x, a, first
    for pos in range(n):
        x = ordv[pos]
        if sl[x] < k - 2:
            continue
        for l in range(lev[x]):
            first = -1
            for q in range(st[l], st[l + 1]):
                a = ordv[q]
                if lt[a, x]:
                    if first >= 0:
                        return int(x), int(first), int(a)
                    first = a
    return None


def scan_based21(const unsigned char[:, ::1] lt, level, order, starts, slc, Py_ssize_t k):
    cdef const i64[::1] lev = np.ascontiguousarray(level, dtype=np.int64)
    cdef const i64[::1] ordv = np.ascontiguousarray(order, dtype=np.int64)
    cdef const i64[::1] st = np.ascontiguousarray(starts, dtype=np.int64)
    cdef const i64[::1] sl = np.ascontiguousarray(slc, dtype=np.int64)
    cdef Py_ssize_t n = ordv.shape[0]
    cdef Py_ssize_t pos, qy, l, q
    cdef i64 x, y, e, cls1, cls2
    for pos in range(n):
        x = ordv[pos]
        if sl[x] < k - 3:
            continue
        for qy in range(st[lev[x]]):
            y = ordv[qy]
            if not lt[y, x]:
                continue
            for l in range(lev[y]):
                cls1 = -1
                cls2 = -1
                for q in range(st[l], st[l + 1]):
                    e = ordv[q]
                    if lt[e, y]:
                        cls1 = e
                    elif lt[e, x]:
                        cls2 = e
                    if cls1 >= 0 and cls2 >= 0:
                        return int(x), int(y), int(cls1), int(cls2)
    return None


def oracle_search(prel, hrel, plevel, hlevel, int kind, pbelow, pabove, hbelow, habove):
    cdef const signed char[:, ::1] pr = np.ascontiguousarray(prel, dtype=np.int8)
    cdef const signed char[:, ::1] hr = np.ascontiguousarray(hrel, dtype=np.int8)
    cdef const i64[::1] pl = np.ascontiguousarray(plevel, dtype=np.int64)
    cdef const i64[::1] hl = np.ascontiguousarray(hlevel, dtype=np.int64)
    cdef const i64[::1] pb = np.ascontiguousarray(pbelow, dtype=np.int64)
    cdef const i64[::1] pa = np.ascontiguousarray(pabove, dtype=np.int64)
    cdef const i64[::1] hb = np.ascontiguousarray(hbelow, dtype=np.int64)
    cdef const i64[::1] ha = np.ascontiguousarray(habove, dtype=np.int64)
    cdef Py_ssize_t k = pr.shape[0]
    cdef Py_ssize_t n = hr.shape[0]
    if k == 0:
        return []
    if k > n:
        return None
    cdef i64[::1] assign = np.full(k, -1, dtype=np.int64)
    cdef i64[::1] nxt = np.zeros(k, dtype=np.int64)
    cdef unsigned char[::1] used = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t depth = 0, h, j
    cdef i64 g, dh, dp
    cdef bint ok, placed
    while depth >= 0:
        placed = False
        for h in range(nxt[depth], n):
            if used[h] or hb[h] < pb[depth] or ha[h] < pa[depth]:
                continue
            ok = True
            for j in range(depth):
                g = assign[j]
                if hr[g, h] != pr[j, depth]:
                    ok = False
                    break
                if kind >= 2:
                    if (hl[g] == hl[h]) != (pl[j] == pl[depth]):
                        ok = False
                        break
                    if kind >= 3:
                        dh = hl[g] - hl[h]
                        dp = pl[j] - pl[depth]
                        if (dh if dh >= 0 else -dh) != (dp if dp >= 0 else -dp):
                            ok = False
                            break
            if ok:
                assign[depth] = h
                used[h] = 1
                nxt[depth] = h + 1
                placed = True
                break
        if placed:
            depth += 1
            if depth == k:
                return [int(assign[j]) for j in range(k)]
            nxt[depth] = 0
        else:
            depth -= 1
            if depth >= 0:
                used[assign[depth]] = 0
                assign[depth] = -1
    return None
