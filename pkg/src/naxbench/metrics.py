"""Quality indicators: hypervolume, IGD, rank correlation, MAE, rank-sum test.

All objective matrices are minimization, shape (n, M).  Hypervolume is
exact: an exclusive-volume recursion over points (2-D closed form at the
base), with points that fail to dominate the reference clipped out, so a
front computed against a tight reference never errors.  Statistical
helpers follow the usual tie-corrected definitions (tau-b, normal-
approximation rank sum).
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy import stats
from scipy.spatial.distance import cdist

from .core import DimensionError


def nondominated_mask(F: np.ndarray) -> np.ndarray:
    """Boolean mask of rows not dominated by any other row (minimization).

    Lexicographic sweep with an incremental archive: a dominator always
    sorts earlier, so each row is tested against surviving rows only.
    """
    F = np.asarray(F, dtype=float)
    if F.ndim != 2:
        raise DimensionError("expected a 2-D objective matrix")
    n = F.shape[0]
    order = np.lexsort(F.T[::-1])
    mask = np.zeros(n, dtype=bool)
    archive = np.empty_like(F)
    kept = 0
    for idx in order:
        f = F[idx]
        if kept:
            a = archive[:kept]
            dominated = np.any(np.all(a <= f, axis=1) & np.any(a < f, axis=1))
            if dominated:
                continue
        archive[kept] = f
        kept += 1
        mask[idx] = True
    return mask


def filter_nondominated(F: np.ndarray) -> np.ndarray:
    """Unique nondominated rows of F, in lexicographic order."""
    F = np.asarray(F, dtype=float)
    nd = F[nondominated_mask(F)]
    return np.unique(nd, axis=0)


def hypervolume(F: Sequence[Sequence[float]], ref: Sequence[float]) -> float:
    """Exact hypervolume of the region dominated by F and bounded by ref.

    Rows that do not strictly dominate ref enclose no volume and are
    clipped out rather than rejected.
    """
    F = np.asarray(F, dtype=float)
    ref = np.asarray(ref, dtype=float)
    if ref.ndim != 1 or ref.shape[0] < 1:
        raise DimensionError("reference point must be a non-empty vector")
    if F.size == 0:
        return 0.0
    if F.ndim != 2 or F.shape[1] != ref.shape[0]:
        raise DimensionError(
            f"front has {F.shape[-1]} objectives, reference {ref.shape[0]}"
        )
    F = F[np.all(F < ref, axis=1)]
    if F.shape[0] == 0:
        return 0.0
    F = np.unique(F[nondominated_mask(F)], axis=0)
    return _hv(F, ref)


def _hv(F: np.ndarray, ref: np.ndarray) -> float:
    """Exclusive-volume recursion; F nondominated, unique, all rows < ref."""
    n, m = F.shape
    if n == 0:
        return 0.0
    if n == 1:
        return float(np.prod(ref - F[0]))
    if m == 1:
        return float(ref[0] - F[:, 0].min())
    if m == 2:
        return _hv_2d(F, ref)
    # points ascend in the first objective: later points lose volume fast
    F = F[np.lexsort(F.T[::-1])]
    total = 0.0
    for i in range(n):
        p = F[i]
        inclusive = float(np.prod(ref - p))
        rest = F[i + 1:]
        if rest.shape[0]:
            limited = np.maximum(rest, p)
            limited = np.unique(limited[nondominated_mask(limited)], axis=0)
            total += inclusive - _hv(limited, ref)
        else:
            total += inclusive
    return total


def _hv_2d(F: np.ndarray, ref: np.ndarray) -> float:
    """Closed-form staircase area; F nondominated and unique."""
    F = F[np.argsort(F[:, 0])]
    area = 0.0
    prev_y = ref[1]
    for x, y in F:
        area += (ref[0] - x) * (prev_y - y)
        prev_y = y
    return float(area)


def igd(front: np.ndarray, pf: np.ndarray) -> float:
    """Mean distance from each reference-front point to its nearest front point."""
    front = np.asarray(front, dtype=float)
    pf = np.asarray(pf, dtype=float)
    if front.ndim != 2 or pf.ndim != 2 or front.shape[1] != pf.shape[1]:
        raise DimensionError("front and reference front must share objective count")
    if pf.shape[0] == 0:
        raise ValueError("reference front is empty")
    if front.shape[0] == 0:
        return float("inf")
    return float(cdist(pf, front).min(axis=1).mean())


def kendall_tau(a: Sequence[float], b: Sequence[float]) -> float:
    """Tau-b rank correlation (tie-corrected)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise DimensionError("inputs must be equal-length vectors")
    if a.shape[0] < 2:
        raise ValueError("need at least two observations")
    return float(stats.kendalltau(a, b).statistic)


def mae(a: Sequence[float], b: Sequence[float]) -> float:
    """Mean absolute error between two equal-length vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise DimensionError("inputs must be equal-length vectors")
    return float(np.mean(np.abs(a - b)))


def wilcoxon_rank_sum(
    a: Sequence[float], b: Sequence[float], alpha: float = 0.05
) -> str:
    """Two-sided tie-corrected rank-sum decision: is sample a larger than b?

    Returns "better" when the difference is significant at alpha and a's
    median is higher, "worse" for the mirror case, else "similar".
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or b.ndim != 1 or len(a) < 2 or len(b) < 2:
        raise ValueError("need two samples with at least two observations each")
    n1, n2 = len(a), len(b)
    n = n1 + n2
    ranks = stats.rankdata(np.concatenate([a, b]))
    r1 = float(ranks[:n1].sum())
    mu = n1 * (n + 1) / 2.0
    _, tie_counts = np.unique(np.concatenate([a, b]), return_counts=True)
    tie_term = float(((tie_counts ** 3) - tie_counts).sum())
    var = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if var <= 0:
        return "similar"
    z = (r1 - mu) / math.sqrt(var)
    p = math.erfc(abs(z) / math.sqrt(2.0))
    if p >= alpha:
        return "similar"
    med_a, med_b = float(np.median(a)), float(np.median(b))
    if med_a > med_b:
        return "better"
    if med_a < med_b:
        return "worse"
    return "better" if z > 0 else "worse"
