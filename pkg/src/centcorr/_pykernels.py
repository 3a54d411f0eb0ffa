"""Pure-Python graph and rank kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and bit-identical results. Graphs arrive in CSR form: ``indptr`` and
``indices`` int64 arrays with sorted neighbor lists.
"""

from collections import deque

import numpy as np


def _adjacency(indptr, indices):
    ptr = indptr.tolist()
    idx = indices.tolist()
    return [idx[ptr[i]:ptr[i + 1]] for i in range(len(ptr) - 1)]


def bfs(indptr, indices, source):
    adj = _adjacency(indptr, indices)
    n = len(adj)
    dist = [-1] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dv
                queue.append(w)
    return np.asarray(dist, dtype=np.int64)


def distance_sums(indptr, indices):
    """All-sources BFS summary.

    Returns per-node (sum of finite distances, sum of inverse distances,
    eccentricity within the reachable set, number of reachable other nodes).
    """
    adj = _adjacency(indptr, indices)
    n = len(adj)
    dsum = [0] * n
    inv = [0.0] * n
    ecc = [0] * n
    reach = [0] * n
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        total = 0
        itotal = 0.0
        far = 0
        count = 0
        while queue:
            v = queue.popleft()
            dv = dist[v] + 1
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(w)
                    total += dv
                    itotal += 1.0 / dv
                    count += 1
                    if dv > far:
                        far = dv
        dsum[s] = total
        inv[s] = itotal
        ecc[s] = far
        reach[s] = count
    return (
        np.asarray(dsum, dtype=np.int64),
        np.asarray(inv, dtype=np.float64),
        np.asarray(ecc, dtype=np.int64),
        np.asarray(reach, dtype=np.int64),
    )


def betweenness(indptr, indices):
    """Brandes accumulation; each unordered pair {s, t} counted once."""
    adj = _adjacency(indptr, indices)
    n = len(adj)
    cb = [0.0] * n
    for s in range(n):
        stack = []
        preds = [[] for _ in range(n)]
        sigma = [0] * n
        sigma[s] = 1
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            dv = dist[v] + 1
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(w)
                if dist[w] == dv:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                cb[w] += delta[w]
    return np.asarray(cb, dtype=np.float64) / 2.0


def core_numbers(indptr, indices):
    """Batagelj-Zaversnik bucket peeling."""
    adj = _adjacency(indptr, indices)
    n = len(adj)
    deg = [len(a) for a in adj]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    maxdeg = max(deg)
    bins = [0] * (maxdeg + 1)
    for d in deg:
        bins[d] += 1
    start = 0
    for d in range(maxdeg + 1):
        count = bins[d]
        bins[d] = start
        start += count
    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        pos[v] = bins[deg[v]]
        vert[pos[v]] = v
        bins[deg[v]] += 1
    for d in range(maxdeg, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0
    for i in range(n):
        v = vert[i]
        for u in adj[v]:
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
    return np.asarray(deg, dtype=np.int64)


def max_neighbor_component(indptr, indices):
    """Size of the largest component induced by each node's neighborhood."""
    adj = _adjacency(indptr, indices)
    n = len(adj)
    mark = [-1] * n
    seen = [-1] * n
    out = [0] * n
    for i in range(n):
        nbrs = adj[i]
        for j in nbrs:
            mark[j] = i
        best = 0
        for root in nbrs:
            if seen[root] == i:
                continue
            seen[root] = i
            size = 0
            stack = [root]
            while stack:
                v = stack.pop()
                size += 1
                for w in adj[v]:
                    if mark[w] == i and seen[w] != i:
                        seen[w] = i
                        stack.append(w)
            if size > best:
                best = size
        out[i] = best
    return np.asarray(out, dtype=np.int64)


def count_inversions(values):
    """Sort ``values`` in place (bottom-up merge sort); return #pairs i<j with v[i] > v[j]."""
    a = values.tolist()
    n = len(a)
    buf = [0.0] * n
    swaps = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
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
        a, buf = buf, a
        width *= 2
    values[:] = a
    return swaps


def louvain_move(indptr, indices, weights, node_w, community, order, m2, max_sweeps):
    """Local-moving phase on a weighted graph without self-loop entries.

    ``node_w`` holds weighted degrees (self-loops counted twice), ``community``
    is updated in place. Returns the number of node moves performed.
    """
    ptr = indptr.tolist()
    idx = indices.tolist()
    wts = weights.tolist()
    k = node_w.tolist()
    comm = community.tolist()
    n = len(k)
    tot = [0.0] * n
    for i in range(n):
        tot[comm[i]] += k[i]
    link = [0.0] * n
    touched = [-1] * n
    stamp = 0
    moves = 0
    for _ in range(max_sweeps):
        moved = 0
        for i in order.tolist():
            stamp += 1
            ci = comm[i]
            ki = k[i]
            seen = []
            for e in range(ptr[i], ptr[i + 1]):
                c = comm[idx[e]]
                if touched[c] != stamp:
                    touched[c] = stamp
                    link[c] = 0.0
                    seen.append(c)
                link[c] += wts[e]
            tot[ci] -= ki
            own = link[ci] if touched[ci] == stamp else 0.0
            best = ci
            best_gain = own - tot[ci] * ki / m2
            for c in seen:
                gain = link[c] - tot[c] * ki / m2
                if gain > best_gain:
                    best_gain = gain
                    best = c
            tot[best] += ki
            if best != ci:
                comm[i] = best
                moved += 1
        moves += moved
        if moved == 0:
            break
    community[:] = comm
    return moves
