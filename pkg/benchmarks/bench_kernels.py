"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --nodes 1000 --degree 8

Both backends run on the same random graph; outputs are checked for
equality before timings are reported.
"""

import argparse
import time

import numpy as np

from centcorr import Graph
from centcorr._backend import compiled_kernels, python_kernels


def random_graph(n, avg_degree, seed):
    rng = np.random.default_rng(seed)
    m = int(n * avg_degree / 2)
    u = rng.integers(0, n, 2 * m)
    v = rng.integers(0, n, 2 * m)
    edges = np.unique(np.sort(np.column_stack([u, v]), axis=1), axis=0)
    edges = edges[edges[:, 0] != edges[:, 1]][:m]
    # a spanning path keeps the graph connected
    path = np.column_stack([np.arange(n - 1), np.arange(1, n)])
    return Graph.from_edges(n, np.vstack([edges, path]).tolist())


def cases(g, seed):
    rng = np.random.default_rng(seed)
    ip, ix = g.indptr, g.indices
    values = rng.integers(0, g.n // 4 + 1, 20 * g.n).astype(np.float64)
    order = rng.permutation(g.n).astype(np.int64)
    weights = np.ones(len(ix))
    node_w = g.degrees.astype(np.float64)
    return {
        "bfs": lambda k: k.bfs(ip, ix, 0),
        "distance_sums": lambda k: k.distance_sums(ip, ix),
        "betweenness": lambda k: k.betweenness(ip, ix),
        "core_numbers": lambda k: k.core_numbers(ip, ix),
        "max_neighbor_component": lambda k: k.max_neighbor_component(ip, ix),
        "count_inversions": lambda k: k.count_inversions(values.copy()),
        "louvain_move": lambda k: (k.louvain_move(ip, ix, weights, node_w, comm := np.arange(g.n, dtype=np.int64),
                                                  order, 2.0 * g.m, 1000), comm),
    }


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=1000)
    ap.add_argument("--degree", type=float, default=8.0)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if compiled_kernels is None:
        raise SystemExit("compiled kernels are not built; reinstall without CENTCORR_NO_EXTENSION")

    g = random_graph(args.nodes, args.degree, args.seed)
    print(f"graph: n={g.n} m={g.m}; best of {args.repeat}")
    print(f"{'kernel':<24}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, run in cases(g, args.seed).items():
        tp, out_p = best_of(lambda: run(python_kernels), args.repeat)
        tc, out_c = best_of(lambda: run(compiled_kernels), args.repeat)
        if not same(out_p, out_c):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<24}{tp:>12.4f}{tc:>12.5f}{tp / tc:>9.0f}x")


if __name__ == "__main__":
    main()
