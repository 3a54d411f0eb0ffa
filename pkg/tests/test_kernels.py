"""Compiled and pure-Python kernels must agree bit for bit."""

import numpy as np
import pytest

from centcorr._backend import compiled_kernels, python_kernels

from conftest import random_graph

pytestmark = pytest.mark.skipif(compiled_kernels is None, reason="compiled kernels not built")


@pytest.fixture(scope="module")
def graphs():
    rng = np.random.default_rng(7)
    out = [random_graph(rng, n, p) for n, p in [(1, 0.5), (2, 1.0), (9, 0.3), (30, 0.1), (60, 0.08), (80, 0.3)]]
    return out


@pytest.mark.parametrize("name", ["distance_sums", "betweenness", "core_numbers", "max_neighbor_component"])
def test_graph_kernels_identical(graphs, name):
    for g in graphs:
        a = getattr(python_kernels, name)(g.indptr, g.indices)
        b = getattr(compiled_kernels, name)(g.indptr, g.indices)
        if isinstance(a, tuple):
            for x, y in zip(a, b):
                assert np.array_equal(x, y)
                assert x.dtype == y.dtype
        else:
            assert np.array_equal(a, b)
            assert a.dtype == b.dtype


def test_bfs_identical(graphs):
    for g in graphs:
        for s in range(g.n):
            assert np.array_equal(python_kernels.bfs(g.indptr, g.indices, s), compiled_kernels.bfs(g.indptr, g.indices, s))


def test_count_inversions_identical():
    rng = np.random.default_rng(3)
    for n in [0, 1, 2, 5, 17, 64, 200]:
        v = rng.integers(0, 6, n).astype(np.float64)
        a, b = v.copy(), v.copy()
        assert python_kernels.count_inversions(a) == compiled_kernels.count_inversions(b)
        assert np.array_equal(a, np.sort(v)) and np.array_equal(b, np.sort(v))


def test_louvain_move_identical(graphs):
    for g in graphs:
        if g.m == 0:
            continue
        order = np.random.default_rng(1).permutation(g.n).astype(np.int64)
        w = np.ones(len(g.indices))
        k = g.degrees.astype(np.float64)
        ca = np.arange(g.n, dtype=np.int64)
        cb = ca.copy()
        ma = python_kernels.louvain_move(g.indptr, g.indices, w, k, ca, order, 2.0 * g.m, 1000)
        mb = compiled_kernels.louvain_move(g.indptr, g.indices, w, k, cb, order, 2.0 * g.m, 1000)
        assert ma == mb
        assert np.array_equal(ca, cb)
