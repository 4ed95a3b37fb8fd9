"""Objective evaluation: noisy error draws, surrogate forwards, table sums.

evaluate_objectives produces one objective vector per genotype, ordered as
the instance's descriptors: the error term first, then complexity, then
hardware metrics per device.  The error term is stochastic (a uniformly
drawn stored repetition, or the prediction of a uniformly drawn ensemble
member); every other component is a pure function of the genotype, so two
calls on the same x agree on all non-error components exactly.

rng is always an explicit numpy Generator argument: callers own the
stream, which is what makes remote evaluation reproducible bit for bit.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    BenchmarkInstance,
    Genotype,
    NaxbenchError,
    UnknownSolutionError,
    clamp_genotype,
)
from .spaces import SpaceCodec
from .store import LookupTable, SurrogateEnsemble, TabularDb, one_hot_features


@dataclass
class EvaluatorBundle:
    """Per-objective data sources of one instance.

    Exactly one of tabular/ensemble is set for the error term; lut backs
    complexity and hardware metrics when tabular is absent.
    """

    tabular: TabularDb | None = None
    ensemble: SurrogateEnsemble | None = None
    lut: LookupTable | None = None


def mlp_forward(model, feats: np.ndarray) -> np.ndarray:
    """Forward pass: ReLU on every layer but the last; returns (n,) outputs."""
    h = np.atleast_2d(feats)
    for i, (w, b) in enumerate(model.layers):
        h = h @ w + b
        if i < len(model.layers) - 1:
            h = np.maximum(h, 0.0)
    return h[:, 0]


def evaluate_error(
    instance: BenchmarkInstance, x: Sequence[int], rng: np.random.Generator
) -> float:
    """One noisy error observation for a single genotype."""
    return float(_error_batch(instance, np.asarray([x], dtype=int), rng)[0])


def _error_batch(
    instance: BenchmarkInstance, X: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    bundle: EvaluatorBundle = instance.evaluators
    if bundle.tabular is not None:
        db = bundle.tabular
        recs = [db.lookup(row) for row in X]
        # one uniform repetition index per solution, drawn in row order
        out = np.empty(X.shape[0])
        for i, rec in enumerate(recs):
            out[i] = rec.fe_reps[int(rng.integers(len(rec.fe_reps)))]
        return out
    if bundle.ensemble is not None:
        ens = bundle.ensemble
        space: SpaceCodec = instance.space
        feats = one_hot_features(space, X)
        if feats.shape[1] != ens.feature_dim:
            raise NaxbenchError(
                f"featurizer emits {feats.shape[1]} dims, ensemble expects {ens.feature_dim}"
            )
        # one uniform member per solution, drawn in row order, then one
        # batched forward per drawn member
        members = rng.integers(len(ens.models), size=X.shape[0])
        out = np.empty(X.shape[0])
        for k in np.unique(members):
            rows = members == k
            out[rows] = mlp_forward(ens.models[int(k)], feats[rows])
        return out
    raise NaxbenchError("instance has no error source")


def lut_accumulate(lut: LookupTable, space: SpaceCodec, phenotype: str) -> dict[str, float]:
    """Sum the table's per-key metrics over the phenotype's decomposition."""
    return lut.accumulate(space.lut_keys(phenotype))


def _deterministic_metrics(
    instance: BenchmarkInstance, x: Genotype
) -> dict[str, float]:
    """All non-error objective values for one genotype."""
    bundle: EvaluatorBundle = instance.evaluators
    names = [d.name for d in instance.objectives[1:]]
    if bundle.tabular is not None:
        rec = bundle.tabular.lookup(x)
        return {name: rec.metric(name) for name in names}
    if bundle.lut is not None:
        totals = lut_accumulate(bundle.lut, instance.space, instance.space.decode(x))
        missing = [n for n in names if n not in totals]
        if missing:
            raise NaxbenchError(f"lookup table lacks metrics {missing}")
        return {name: totals[name] for name in names}
    if names:
        raise NaxbenchError("instance has no complexity/hardware source")
    return {}


def evaluate_objectives(
    instance: BenchmarkInstance, x: Sequence[int], rng: np.random.Generator
) -> np.ndarray:
    """Full objective vector for one genotype, in instance.objectives order.

    The genotype must be in-range and valid; repair belongs to the service
    boundary, not here.
    """
    x = instance.space.check(x)
    if not instance.space.is_valid(x):
        raise ValueError(f"invalid genotype for {instance.space.name}: {list(x)}")
    err = _error_batch(instance, np.asarray([x], dtype=int), rng)[0]
    metrics = _deterministic_metrics(instance, x)
    return np.array([err] + [metrics[d.name] for d in instance.objectives[1:]])


def _row_seed(space_name: str, row: Sequence[int]) -> int:
    payload = (space_name + ":" + ",".join(str(int(v)) for v in row)).encode()
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "big")


def repair_genotypes(space: SpaceCodec, X: Sequence[Sequence[int]]) -> list:
    """Clamp rows into range, then replace still-invalid rows.

    Replacement draws from a generator seeded by a hash of the offending
    row, so repair is deterministic per row and consumes no caller rng.
    """
    out = []
    for row in X:
        g = clamp_genotype(row, space.cardinalities)
        if not space.is_valid(g):
            rr = np.random.default_rng(_row_seed(space.name, row))
            g = space.sample(rr, 1)[0]
        out.append(g)
    return out


def evaluate_batch(
    instance: BenchmarkInstance, X: Sequence[Sequence[int]], rng: np.random.Generator
) -> np.ndarray:
    """Objective matrix (n, M) for n genotypes.

    Consumes the rng exactly like n scalar calls in row order; surrogate
    forwards are grouped into one matrix product per drawn member.
    """
    rows = [instance.space.check(x) for x in X]
    for i, x in enumerate(rows):
        if not instance.space.is_valid(x):
            raise ValueError(f"row {i}: invalid genotype {list(x)}")
    Xa = np.asarray(rows, dtype=int)
    err = _error_batch(instance, Xa, rng)
    out = np.empty((Xa.shape[0], len(instance.objectives)))
    out[:, 0] = err
    for i, x in enumerate(rows):
        metrics = _deterministic_metrics(instance, x)
        out[i, 1:] = [metrics[d.name] for d in instance.objectives[1:]]
    return out
