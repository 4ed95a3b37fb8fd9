"""Baseline optimizers: NSGA-II and random search over integer genotypes.

Also provides the supporting machinery: Das-Dennis reference directions
(single and bi-layer), the per-objective-count population-size schedule,
fast nondominated sorting and crowding distance.

Both run functions return a plain dict {config, seed, evals, X, F,
hv_trace} where X/F are the nondominated archive over every evaluated
point and hv_trace holds the archive hypervolume after each generation
(or batch), measured against the instance reference point.  Runs are
deterministic in (instance data, arguments, seed).
"""

from __future__ import annotations

import numpy as np

from .core import BenchmarkInstance, Genotype
from .evaluators import evaluate_batch
from .metrics import hypervolume, nondominated_mask

# (H1, H2, N) per objective count; N = C(H1+M-1, M-1) + C(H2+M-1, M-1)
_POP_TABLE = {
    2: (99, 0, 100),
    3: (13, 0, 105),
    4: (7, 0, 120),
    5: (5, 0, 126),
    6: (4, 1, 132),
    8: (3, 2, 156),
}


def population_size(m: int) -> tuple[int, int, int]:
    """Direction-lattice resolutions and population size for m objectives."""
    try:
        return _POP_TABLE[m]
    except KeyError:
        raise ValueError(
            f"no population schedule for M={m}; listed: {sorted(_POP_TABLE)}"
        ) from None


def _simplex_lattice(m: int, h: int) -> np.ndarray:
    rows: list[list[int]] = []

    def rec(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 1:
            rows.append(prefix + [remaining])
            return
        for v in range(remaining + 1):
            rec(prefix + [v], remaining - v, slots - 1)

    rec([], h, m)
    return np.asarray(rows, dtype=float) / h


def das_dennis(m: int, h1: int, h2: int = 0) -> np.ndarray:
    """Simplex-lattice directions; h2 > 0 adds an inner layer shrunk by 1/2."""
    if m < 2:
        raise ValueError(f"need at least 2 objectives, got {m}")
    if h1 < 1 or h2 < 0:
        raise ValueError(f"invalid lattice resolutions ({h1}, {h2})")
    outer = _simplex_lattice(m, h1)
    if h2 == 0:
        return outer
    inner = _simplex_lattice(m, h2) * 0.5 + 0.5 / m
    return np.vstack([outer, inner])


def fast_nondominated_sort(F) -> np.ndarray:
    """Front index per row: 0 for the nondominated set, 1 for the next, ..."""
    F = np.asarray(F, dtype=float)
    if F.ndim != 2:
        raise ValueError("F must be a 2-d matrix")
    n = F.shape[0]
    if n == 0:
        return np.empty(0, dtype=int)
    if not np.all(np.isfinite(F)):
        raise ValueError("F must be finite")
    # dom[i, j]: row i dominates row j
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    dom = le & lt
    n_dom = dom.sum(axis=0)
    ranks = np.full(n, -1, dtype=int)
    current = np.where(n_dom == 0)[0]
    rank = 0
    while current.size:
        ranks[current] = rank
        n_dom = n_dom - dom[current].sum(axis=0)
        n_dom[current] = -1  # assigned rows never requalify
        current = np.where(n_dom == 0)[0]
        rank += 1
    return ranks


def crowding_distance(F, ranks) -> np.ndarray:
    """Per-row crowding within its front; boundary rows get +inf."""
    F = np.asarray(F, dtype=float)
    ranks = np.asarray(ranks)
    dist = np.zeros(F.shape[0])
    for r in np.unique(ranks):
        idx = np.where(ranks == r)[0]
        if idx.size <= 2:
            dist[idx] = np.inf
            continue
        for m in range(F.shape[1]):
            order = idx[np.argsort(F[idx, m], kind="stable")]
            dist[order[0]] = dist[order[-1]] = np.inf
            span = F[order[-1], m] - F[order[0], m]
            if span <= 0:
                continue
            dist[order[1:-1]] += (F[order[2:], m] - F[order[:-2], m]) / span
    return dist


def _tournament(rng: np.random.Generator, ranks, crowd) -> int:
    i, j = (int(v) for v in rng.integers(len(ranks), size=2))
    if ranks[i] != ranks[j]:
        return i if ranks[i] < ranks[j] else j
    if crowd[i] != crowd[j]:
        return i if crowd[i] > crowd[j] else j
    return i


_VARIATION_TRIES = 100


def _make_child(rng, p1, p2, cards, space, crossover_rate, mutation_rate):
    d = len(cards)
    for _ in range(_VARIATION_TRIES):
        if rng.random() < crossover_rate:
            mask = rng.random(d) < 0.5
            child = np.where(mask, p1, p2)
        else:
            child = p1.copy()
        mut = rng.random(d) < mutation_rate
        if mut.any():
            child = child.copy()
            child[mut] = rng.integers(0, cards[mut])
        t = tuple(int(v) for v in child)
        if space.is_valid(t):
            return t
    return tuple(int(v) for v in p1)  # parent fallback, valid by construction


def _select(F: np.ndarray, n: int) -> np.ndarray:
    """Indices of the n rows surviving rank-then-crowding truncation."""
    ranks = fast_nondominated_sort(F)
    crowd = crowding_distance(F, ranks)
    # stable lexicographic order: rank ascending, crowding descending
    order = np.lexsort((np.arange(len(F)), -crowd, ranks))
    return order[:n]


class _Archive:
    """Running nondominated set over every evaluated (genotype, F) pair."""

    def __init__(self, m: int):
        self.X: list[Genotype] = []
        self.F = np.empty((0, m))

    def add(self, X: list[Genotype], F: np.ndarray) -> None:
        allX = self.X + list(X)
        allF = np.vstack([self.F, F])
        mask = nondominated_mask(allF)
        self.X = [x for x, keep in zip(allX, mask) if keep]
        self.F = allF[mask]

    def hv(self, ref) -> float:
        return hypervolume(self.F, ref)


def _result(algo: str, config: dict, seed: int, evals: int, archive: _Archive,
            hv_trace: list[float]) -> dict:
    return {
        "config": {"algo": algo, **config},
        "seed": seed,
        "evals": evals,
        "X": list(archive.X),
        "F": archive.F.copy(),
        "hv_trace": list(hv_trace),
    }


def nsga2_run(
    instance: BenchmarkInstance,
    N: int | None = None,
    max_evals: int = 10_000,
    seed: int = 0,
    crossover_rate: float = 0.9,
    mutation_rate: float | None = None,
) -> dict:
    """Elitist NSGA-II; returns the archive over all evaluated points."""
    space = instance.space
    m = instance.objective_dim
    if N is None:
        N = population_size(m)[2]
    if N < 2:
        raise ValueError(f"population size must be at least 2, got {N}")
    if max_evals < N:
        raise ValueError(f"max_evals={max_evals} below population size {N}")
    cards = np.asarray(space.cardinalities)
    if mutation_rate is None:
        mutation_rate = 1.0 / space.dimension
    ref = instance.reference_point

    rng = np.random.default_rng(seed)
    pop_X = space.sample(rng, N)
    pop_F = evaluate_batch(instance, pop_X, rng)
    evals = N
    archive = _Archive(m)
    archive.add(pop_X, pop_F)
    hv_trace = [archive.hv(ref)]

    pop_arr = np.asarray(pop_X)
    while evals < max_evals:
        ranks = fast_nondominated_sort(pop_F)
        crowd = crowding_distance(pop_F, ranks)
        n_off = min(N, max_evals - evals)
        children: list[Genotype] = []
        for _ in range(n_off):
            a = _tournament(rng, ranks, crowd)
            b = _tournament(rng, ranks, crowd)
            children.append(
                _make_child(rng, pop_arr[a], pop_arr[b], cards, space,
                            crossover_rate, mutation_rate)
            )
        child_F = evaluate_batch(instance, children, rng)
        evals += n_off
        archive.add(children, child_F)
        hv_trace.append(archive.hv(ref))

        merged_X = list(pop_X) + children
        merged_F = np.vstack([pop_F, child_F])
        keep = _select(merged_F, N)
        pop_X = [merged_X[i] for i in keep]
        pop_F = merged_F[keep]
        pop_arr = np.asarray(pop_X)

    config = {
        "suite": instance.suite,
        "index": instance.index,
        "instance": instance.name,
        "N": N,
        "max_evals": max_evals,
        "crossover_rate": crossover_rate,
        "mutation_rate": mutation_rate,
    }
    return _result("nsga2", config, seed, evals, archive, hv_trace)


def random_search_run(
    instance: BenchmarkInstance,
    max_evals: int = 10_000,
    seed: int = 0,
    batch: int = 100,
) -> dict:
    """Uniform valid sampling; archive is the nondominated set of all draws."""
    if max_evals < 1:
        raise ValueError("max_evals must be positive")
    if batch < 1:
        raise ValueError("batch must be positive")
    space = instance.space
    ref = instance.reference_point
    rng = np.random.default_rng(seed)
    archive = _Archive(instance.objective_dim)
    hv_trace: list[float] = []
    evals = 0
    while evals < max_evals:
        n = min(batch, max_evals - evals)
        X = space.sample(rng, n)
        F = evaluate_batch(instance, X, rng)
        evals += n
        archive.add(X, F)
        hv_trace.append(archive.hv(ref))
    config = {
        "suite": instance.suite,
        "index": instance.index,
        "instance": instance.name,
        "max_evals": max_evals,
        "batch": batch,
    }
    return _result("random", config, seed, evals, archive, hv_trace)
