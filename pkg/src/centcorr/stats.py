"""Rank and linear statistics used by the correlation and regression analyses."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from scipy.special import betainc

from ._backend import kernels
from .exceptions import StatsError


@dataclass(frozen=True)
class CorrelationRecord:
    network_id: str
    classical_name: str
    community_name: str
    tau: float


@dataclass(frozen=True)
class DistributionSummary:
    mean: float
    median: float
    std: float
    iqr: float
    min: float
    max: float
    n: int


@dataclass(frozen=True)
class RegressionRecord:
    community_name: str
    feature_name: str
    slope: float
    intercept: float
    r_squared: float
    p_value: float
    n: int

    @property
    def significance(self) -> str:
        return significance_flag(self.p_value)


def significance_flag(p: float) -> str:
    if p is None or math.isnan(p):
        return ""
    if p <= 0.01:
        return "P*"
    if p <= 0.05:
        return "P"
    return ""


def _pair(x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or x.shape != y.shape:
        raise StatsError(f"length mismatch: {x.shape} vs {y.shape}")
    if len(x) < 2:
        raise StatsError("need at least two observations")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise StatsError("inputs must be finite")
    return x, y


def _tied_pairs(sorted_values) -> int:
    """Number of tied pairs in an already sorted vector."""
    if len(sorted_values) == 0:
        return 0
    breaks = np.flatnonzero(np.diff(sorted_values) != 0) + 1
    runs = np.diff(np.concatenate([[0], breaks, [len(sorted_values)]]))
    return int(sum(int(r) * (int(r) - 1) // 2 for r in runs if r > 1))


def kendall_tau(x, y) -> float:
    """Kendall's tau-b in O(n log n) (Knight's merge-sort algorithm)."""
    x, y = _pair(x, y)
    n = len(x)
    order = np.lexsort((y, x))
    xs, ys = x[order], np.ascontiguousarray(y[order])
    n0 = n * (n - 1) // 2
    n1 = _tied_pairs(xs)
    same_x = np.diff(xs) == 0
    same_xy = same_x & (np.diff(ys) == 0)
    n3 = _tied_pairs(np.cumsum(np.concatenate([[0], ~same_xy])))
    discordant = int(kernels.count_inversions(ys))
    n2 = _tied_pairs(ys)
    if n1 == n0 or n2 == n0:
        raise StatsError("Kendall's tau is undefined for a constant vector")
    s = n0 - n1 - n2 + n3 - 2 * discordant
    return s / math.sqrt((n0 - n1) * (n0 - n2))


def pearson(x, y) -> float:
    x, y = _pair(x, y)
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(xc @ xc)
    syy = float(yc @ yc)
    if sxx == 0 or syy == 0:
        raise StatsError("Pearson correlation is undefined for a constant vector")
    r = float(xc @ yc) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def summarize(values) -> DistributionSummary:
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise StatsError("cannot summarise an empty sample")
    q1, med, q3 = np.percentile(v, [25, 50, 75])
    return DistributionSummary(
        mean=float(v.mean()),
        median=float(med),
        std=float(v.std(ddof=1)) if v.size > 1 else 0.0,
        iqr=float(q3 - q1),
        min=float(v.min()),
        max=float(v.max()),
        n=int(v.size),
    )


def student_t_two_sided(t: float, df: float) -> float:
    """Two-sided tail probability ``P(|T| >= |t|)`` through the regularized incomplete beta."""
    if math.isinf(t):
        return 0.0
    return float(betainc(df / 2.0, 0.5, df / (df + t * t)))


def ols_fit(x, y, community_name: str = "", feature_name: str = "") -> RegressionRecord:
    """Simple linear regression with a t-test on the slope."""
    x, y = _pair(x, y)
    n = len(x)
    if n < 3:
        raise StatsError("regression needs at least three observations")
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(xc @ xc)
    if sxx == 0:
        raise StatsError("regressor is constant")
    sxy = float(xc @ yc)
    syy = float(yc @ yc)
    slope = sxy / sxx
    intercept = float(y.mean() - slope * x.mean())
    resid = yc - slope * xc
    sse = float(resid @ resid)
    r2 = min(1.0, sxy * sxy / (sxx * syy)) if syy > 0 else 0.0
    df = n - 2
    if syy == 0:
        p = 1.0
    elif sse <= 1e-30 * syy:
        p = 0.0
    else:
        se = math.sqrt(sse / df / sxx)
        p = student_t_two_sided(slope / se, df)
    return RegressionRecord(community_name, feature_name, slope, intercept, r2, min(1.0, p), n)


def pairwise_network_consistency(per_network: Mapping[str, np.ndarray]):
    """Pearson correlation between every two networks' correlation vectors.

    Positions that are missing (NaN) in either vector are skipped for that
    pair. Returns ``(network_ids, matrix)`` with ids in sorted order.
    """
    ids = sorted(per_network)
    vecs = [np.asarray(per_network[k], dtype=np.float64) for k in ids]
    if len({len(v) for v in vecs}) > 1:
        raise StatsError("networks have correlation vectors of different lengths")
    out = np.eye(len(ids))
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            ok = np.isfinite(vecs[a]) & np.isfinite(vecs[b])
            try:
                r = pearson(vecs[a][ok], vecs[b][ok])
            except StatsError:
                r = float("nan")
            out[a, b] = out[b, a] = r
    return ids, out
