"""Independent reference implementations used only by the tests.

Deliberately naive: correctness over speed, no code shared with the
package under test.
"""

import itertools
import math

import numpy as np


def hv_inclusion_exclusion(F, ref):
    """Hypervolume by inclusion-exclusion over all point subsets (O(2^n))."""
    F = np.asarray(F, dtype=float)
    ref = np.asarray(ref, dtype=float)
    n = F.shape[0]
    total = 0.0
    for r in range(1, n + 1):
        for subset in itertools.combinations(range(n), r):
            corner = F[list(subset)].max(axis=0)
            vol = float(np.prod(np.clip(ref - corner, 0.0, None)))
            total += vol if r % 2 == 1 else -vol
    return total


def hv_monte_carlo(F, ref, n_samples, seed):
    """(estimate, standard error) by uniform sampling of the bounding box."""
    F = np.asarray(F, dtype=float)
    ref = np.asarray(ref, dtype=float)
    lo = F.min(axis=0)
    box = float(np.prod(ref - lo))
    rng = np.random.default_rng(seed)
    hits = 0
    for start in range(0, n_samples, 65536):
        m = min(65536, n_samples - start)
        pts = rng.uniform(lo, ref, size=(m, len(ref)))
        dominated = np.zeros(m, dtype=bool)
        for f in F:
            dominated |= np.all(pts >= f, axis=1)
        hits += int(dominated.sum())
    p = hits / n_samples
    return box * p, box * math.sqrt(p * (1.0 - p) / n_samples)


def igd_double_loop(front, pf):
    total = 0.0
    for p in pf:
        best = min(math.dist(p, q) for q in front)
        total += best
    return total / len(pf)


def kendall_tau_pairs(a, b):
    """Tau-b from explicit pair counting."""
    n = len(a)
    conc = disc = ties_a = ties_b = 0
    for i in range(n):
        for j in range(i + 1, n):
            da, db = a[i] - a[j], b[i] - b[j]
            if da == 0 and db == 0:
                ties_a += 1
                ties_b += 1
            elif da == 0:
                ties_a += 1
            elif db == 0:
                ties_b += 1
            elif (da > 0) == (db > 0):
                conc += 1
            else:
                disc += 1
    n0 = n * (n - 1) / 2
    denom = math.sqrt((n0 - ties_a) * (n0 - ties_b))
    return (conc - disc) / denom if denom else float("nan")


def rank_sum_exact_p(a, b):
    """Exact two-sided p of the rank-sum statistic by full enumeration.

    Only usable for small samples without ties.
    """
    pooled = sorted(a) + sorted(b)
    assert len(set(pooled)) == len(pooled), "exact oracle assumes no ties"
    ranks = {v: i + 1 for i, v in enumerate(sorted(pooled))}
    n1 = len(a)
    observed = sum(ranks[v] for v in a)
    mu = n1 * (len(pooled) + 1) / 2
    all_ranks = list(range(1, len(pooled) + 1))
    count = 0
    total = 0
    for comb in itertools.combinations(all_ranks, n1):
        total += 1
        if abs(sum(comb) - mu) >= abs(observed - mu) - 1e-9:
            count += 1
    return count / total


def dominates(p, q):
    return all(x <= y for x, y in zip(p, q)) and any(x < y for x, y in zip(p, q))


def nondominated_bruteforce(F):
    F = np.asarray(F, dtype=float)
    return np.array(
        [not any(dominates(F[j], F[i]) for j in range(len(F)) if j != i)
         for i in range(len(F))]
    )


def mlp_reference(layers, feats):
    """Per-sample forward pass with explicit loops."""
    out = []
    for row in np.asarray(feats, dtype=float):
        h = row
        for k, (w, b) in enumerate(layers):
            h = h @ w + b
            if k < len(layers) - 1:
                h = np.maximum(h, 0.0)
        out.append(float(h[0]))
    return np.asarray(out)
