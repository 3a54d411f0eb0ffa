# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph and rank kernels; see ``_pykernels`` for the reference twin."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def bfs(const i64[::1] indptr, const i64[::1] indices, i64 source):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[::1] dist = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t head = 0, tail = 0, e
    cdef i64 v, w, dv
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v] + 1
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if dist[w] < 0:
                dist[w] = dv
                queue[tail] = w
                tail += 1
    return np.asarray(dist)


def distance_sums(const i64[::1] indptr, const i64[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[::1] dsum = np.zeros(n, dtype=np.int64)
    cdef double[::1] inv = np.zeros(n, dtype=np.float64)
    cdef i64[::1] ecc = np.zeros(n, dtype=np.int64)
    cdef i64[::1] reach = np.zeros(n, dtype=np.int64)
    cdef i64[::1] dist = np.empty(n, dtype=np.int64)
    cdef i64[::1] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t s, head, tail, e
    cdef i64 v, w, dv, total, far, count
    cdef double itotal
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        head = 0
        tail = 1
        queue[0] = s
        total = 0
        itotal = 0.0
        far = 0
        count = 0
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v] + 1
            for e in range(indptr[v], indptr[v + 1]):
                w = indices[e]
                if dist[w] < 0:
                    dist[w] = dv
                    queue[tail] = w
                    tail += 1
                    total += dv
                    itotal += 1.0 / <double>dv
                    count += 1
                    if dv > far:
                        far = dv
        dsum[s] = total
        inv[s] = itotal
        ecc[s] = far
        reach[s] = count
    return np.asarray(dsum), np.asarray(inv), np.asarray(ecc), np.asarray(reach)


def betweenness(const i64[::1] indptr, const i64[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t nnz = indices.shape[0]
    cdef double[::1] cb = np.zeros(n, dtype=np.float64)
    cdef double[::1] sigma = np.empty(n, dtype=np.float64)
    cdef double[::1] delta = np.empty(n, dtype=np.float64)
    cdef i64[::1] dist = np.empty(n, dtype=np.int64)
    cdef i64[::1] stack = np.empty(max(n, 1), dtype=np.int64)
    # predecessor lists packed per node: preds[indptr[w] : indptr[w] + npred[w]]
    cdef i64[::1] preds = np.empty(max(nnz, 1), dtype=np.int64)
    cdef i64[::1] npred = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t s, head, tail, top, e
    cdef i64 v, w, dv
    cdef double coeff
    for s in range(n):
        sigma[:] = 0.0
        delta[:] = 0.0
        dist[:] = -1
        npred[:] = 0
        sigma[s] = 1.0
        dist[s] = 0
        # stack doubles as the BFS queue: BFS order is the push order
        head = 0
        tail = 1
        stack[0] = s
        while head < tail:
            v = stack[head]
            head += 1
            dv = dist[v] + 1
            for e in range(indptr[v], indptr[v + 1]):
                w = indices[e]
                if dist[w] < 0:
                    dist[w] = dv
                    stack[tail] = w
                    tail += 1
                if dist[w] == dv:
                    sigma[w] += sigma[v]
                    preds[indptr[w] + npred[w]] = v
                    npred[w] += 1
        top = tail
        while top > 0:
            top -= 1
            w = stack[top]
            coeff = (1.0 + delta[w]) / sigma[w]
            for e in range(indptr[w], indptr[w] + npred[w]):
                v = preds[e]
                delta[v] += sigma[v] * coeff
            if w != s:
                cb[w] += delta[w]
    return np.asarray(cb) / 2.0


def core_numbers(const i64[::1] indptr, const i64[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    cdef i64[::1] deg = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t v, i, e
    cdef i64 maxdeg = 0, d, start, count, u, du, pu, pw, w
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
        if deg[v] > maxdeg:
            maxdeg = deg[v]
    cdef i64[::1] bins = np.zeros(maxdeg + 1, dtype=np.int64)
    cdef i64[::1] pos = np.empty(n, dtype=np.int64)
    cdef i64[::1] vert = np.empty(n, dtype=np.int64)
    for v in range(n):
        bins[deg[v]] += 1
    start = 0
    for d in range(maxdeg + 1):
        count = bins[d]
        bins[d] = start
        start += count
    for v in range(n):
        pos[v] = bins[deg[v]]
        vert[pos[v]] = v
        bins[deg[v]] += 1
    for d in range(maxdeg, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0
    for i in range(n):
        v = vert[i]
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bins[du]
                w = vert[pw]
                if u != w:
                    pos[u] = pw
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                bins[du] += 1
                deg[u] -= 1
    return np.asarray(deg)


def max_neighbor_component(const i64[::1] indptr, const i64[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[::1] mark = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] seen = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] out = np.zeros(n, dtype=np.int64)
    cdef i64[::1] stack = np.empty(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t i, e, f, top
    cdef i64 root, v, w, size, best
    for i in range(n):
        for e in range(indptr[i], indptr[i + 1]):
            mark[indices[e]] = i
        best = 0
        for e in range(indptr[i], indptr[i + 1]):
            root = indices[e]
            if seen[root] == i:
                continue
            seen[root] = i
            size = 0
            top = 1
            stack[0] = root
            while top > 0:
                top -= 1
                v = stack[top]
                size += 1
                for f in range(indptr[v], indptr[v + 1]):
                    w = indices[f]
                    if mark[w] == i and seen[w] != i:
                        seen[w] = i
                        stack[top] = w
                        top += 1
            if size > best:
                best = size
        out[i] = best
    return np.asarray(out)


def count_inversions(double[::1] values):
    cdef Py_ssize_t n = values.shape[0]
    cdef double[::1] a = values
    cdef double[::1] buf = np.empty(max(n, 1), dtype=np.float64)
    cdef double[::1] tmp
    cdef Py_ssize_t width = 1, lo, mid, hi, i, j, k
    cdef long long swaps = 0
    cdef bint in_values = True
    while width < n:
        lo = 0
        while lo < n:
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i = lo
            j = mid
            k = lo
            while i < mid and j < hi:
                if a[j] < a[i]:
                    buf[k] = a[j]
                    swaps += mid - i
                    j += 1
                else:
                    buf[k] = a[i]
                    i += 1
                k += 1
            while i < mid:
                buf[k] = a[i]
                i += 1
                k += 1
            while j < hi:
                buf[k] = a[j]
                j += 1
                k += 1
            lo += 2 * width
        tmp = a
        a = buf
        buf = tmp
        in_values = not in_values
        width *= 2
    if not in_values:
        values[:] = a
    return swaps


def louvain_move(const i64[::1] indptr, const i64[::1] indices, const double[::1] weights,
                 const double[::1] node_w, i64[::1] community, const i64[::1] order,
                 double m2, Py_ssize_t max_sweeps):
    cdef Py_ssize_t n = node_w.shape[0]
    cdef double[::1] tot = np.zeros(n, dtype=np.float64)
    cdef double[::1] link = np.zeros(n, dtype=np.float64)
    cdef i64[::1] touched = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] seen = np.empty(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t sweep, t, e, nseen, q
    cdef i64 i, c, ci, best, stamp = 0, moves = 0, moved
    cdef double ki, own, gain, best_gain
    for t in range(n):
        tot[community[t]] += node_w[t]
    for sweep in range(max_sweeps):
        moved = 0
        for t in range(order.shape[0]):
            i = order[t]
            stamp += 1
            ci = community[i]
            ki = node_w[i]
            nseen = 0
            for e in range(indptr[i], indptr[i + 1]):
                c = community[indices[e]]
                if touched[c] != stamp:
                    touched[c] = stamp
                    link[c] = 0.0
                    seen[nseen] = c
                    nseen += 1
                link[c] += weights[e]
            tot[ci] -= ki
            own = link[ci] if touched[ci] == stamp else 0.0
            best = ci
            best_gain = own - tot[ci] * ki / m2
            for q in range(nseen):
                c = seen[q]
                gain = link[c] - tot[c] * ki / m2
                if gain > best_gain:
                    best_gain = gain
                    best = c
            tot[best] += ki
            if best != ci:
                community[i] = best
                moved += 1
        moves += moved
        if moved == 0:
            break
    return moves
