"""Benchmark suite registry and instantiation.

Two suites are registered: ``c10mop`` (nine problems over the CIFAR-10
catalogs) and ``in1kmop`` (nine over the ImageNet-scale ones).  Each entry
pins the search space, the objective selection and order (error first,
then complexity, then per-device hardware metrics), the problem properties,
and the published hypervolume reference point, retrievable digit for digit
via reference_point().

instantiate() binds an entry to data files under a data root.  Because the
objective scales of a loaded data set need not match the published ones,
the instance's own reference point is derived from the data: the nadir of
the true Pareto front when the catalog is exhaustive, else the stored
worst-sample point.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import BenchmarkInstance, ObjectiveDescriptor, SchemaError
from .evaluators import EvaluatorBundle
from .metrics import nondominated_mask
from .spaces import get_space
from .store import (
    TabularDb,
    data_root as default_data_root,
    load_ensemble,
    load_lut,
    load_tabular,
)

MULTI_MODAL = "multi_modal"
MANY_OBJECTIVE = "many_objective"
NOISY = "noisy"
BADLY_SCALED = "badly_scaled"
DEGENERATE_PF = "degenerate_pf"


def _desc(name: str) -> ObjectiveDescriptor:
    if name == "error":
        return ObjectiveDescriptor(
            name="error", kind="error", noisy=True, unit="fraction",
            lower=0.0, upper=1.0,
        )
    if name in ("params", "flops"):
        return ObjectiveDescriptor(
            name=name, kind="complexity", noisy=False, unit="count", lower=0.0
        )
    metric, device = name.split("@", 1)
    unit = {"latency": "s", "energy": "J", "arith_intensity": "ops/B"}[metric]
    return ObjectiveDescriptor(
        name=name,
        kind="hardware",
        noisy=False,
        unit=unit,
        hardware_id=device,
        conventionally_maximized=(metric == "arith_intensity"),
        lower=0.0,
    )


@dataclass(frozen=True)
class SuiteEntry:
    suite: str
    index: int
    name: str
    space: str
    objectives: tuple[ObjectiveDescriptor, ...]
    properties: frozenset[str]
    reference_point: tuple[float, ...]

    @property
    def n_obj(self) -> int:
        return len(self.objectives)

    @property
    def n_var(self) -> int:
        return get_space(self.space).dimension


def _entry(suite, index, space, names, props, ref):
    label = "C-10" if suite == "c10mop" else "IN-1K"
    return SuiteEntry(
        suite=suite,
        index=index,
        name=f"{label}/MOP{index}",
        space=space,
        objectives=tuple(_desc(n) for n in names),
        properties=frozenset(props),
        reference_point=tuple(ref),
    )


_GPU = ("latency@gpu", "energy@gpu")
_EYERISS = ("latency@eyeriss", "energy@eyeriss", "arith_intensity@eyeriss")

SUITES: dict[str, tuple[SuiteEntry, ...]] = {
    "c10mop": (
        _entry("c10mop", 1, "nb101", ("error", "params"),
               (MULTI_MODAL, NOISY),
               (0.1534, 3.2427e7)),
        _entry("c10mop", 2, "nb101", ("error", "params", "flops"),
               (MULTI_MODAL, NOISY, DEGENERATE_PF),
               (0.1577, 3.2427e7, 9.5450e9)),
        _entry("c10mop", 3, "nats", ("error", "params", "flops"),
               (DEGENERATE_PF,),
               (0.2021, 5.7995e5, 2.5706e8)),
        _entry("c10mop", 4, "nats", ("error", "params", "flops", "latency@gpu"),
               (MANY_OBJECTIVE, DEGENERATE_PF),
               (0.2021, 5.7995e5, 2.5706e8, 2.0064e-2)),
        _entry("c10mop", 5, "nb201", ("error", "params", "flops") + _GPU,
               (MULTI_MODAL, MANY_OBJECTIVE, NOISY, DEGENERATE_PF),
               (0.9000, 1.0735e6, 1.5327e8, 6.8889e-3, 3.2651e-2)),
        _entry("c10mop", 6, "nb201", ("error", "params", "flops") + _EYERISS,
               (MULTI_MODAL, MANY_OBJECTIVE, NOISY, DEGENERATE_PF),
               (0.5098, 1.0735e6, 1.5327e8, 1.0527e-2, 2.0139e-3, 26.596)),
        _entry("c10mop", 7, "nb201", ("error", "params", "flops") + _GPU + _EYERISS,
               (MULTI_MODAL, MANY_OBJECTIVE, NOISY, DEGENERATE_PF),
               (0.9000, 1.0735e6, 1.5327e8, 8.1821e-3, 3.4711e-2, 1.0527e-2,
                2.0139e-3, 27.078)),
        _entry("c10mop", 8, "darts", ("error", "params"),
               (MULTI_MODAL, NOISY, BADLY_SCALED),
               (0.2750, 1.6724e6)),
        _entry("c10mop", 9, "darts", ("error", "params", "flops"),
               (MULTI_MODAL, NOISY, BADLY_SCALED),
               (0.2750, 1.6724e6, 2.7034e8)),
    ),
    "in1kmop": (
        _entry("in1kmop", 1, "resnet50", ("error", "params"),
               (MULTI_MODAL, NOISY, BADLY_SCALED),
               (0.3124, 4.4114e7)),
        _entry("in1kmop", 2, "resnet50", ("error", "flops"),
               (MULTI_MODAL, NOISY, BADLY_SCALED),
               (0.3124, 1.4577e10)),
        _entry("in1kmop", 3, "resnet50", ("error", "params", "flops"),
               (MULTI_MODAL, NOISY, BADLY_SCALED),
               (0.3124, 4.4114e7, 1.4577e10)),
        _entry("in1kmop", 4, "transformer", ("error", "params"),
               (NOISY, BADLY_SCALED),
               (0.1832, 7.4134e7)),
        _entry("in1kmop", 5, "transformer", ("error", "flops"),
               (NOISY, BADLY_SCALED),
               (0.1832, 1.5403e10)),
        _entry("in1kmop", 6, "transformer", ("error", "params", "flops"),
               (NOISY, BADLY_SCALED),
               (0.1832, 7.4134e7, 1.5403e10)),
        _entry("in1kmop", 7, "mnv3", ("error", "params"),
               (MULTI_MODAL, NOISY, BADLY_SCALED),
               (0.2980, 1.0198e7)),
        _entry("in1kmop", 8, "mnv3", ("error", "params", "flops"),
               (MULTI_MODAL, NOISY, BADLY_SCALED),
               (0.2980, 1.0198e7, 1.3768e9)),
        _entry("in1kmop", 9, "mnv3", ("error", "params", "flops", "latency@note10"),
               (MULTI_MODAL, MANY_OBJECTIVE, NOISY, BADLY_SCALED),
               (0.2980, 1.0198e7, 1.3768e9, 7.0386e-2)),
    ),
}


def suite_names() -> tuple[str, ...]:
    return tuple(SUITES)


def registry_entry(suite: str, index: int) -> SuiteEntry:
    """Entry by suite name and 1-based problem index."""
    try:
        entries = SUITES[suite]
    except KeyError:
        raise KeyError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}") from None
    if not 1 <= index <= len(entries):
        raise IndexError(f"{suite} has problems 1..{len(entries)}, got {index}")
    return entries[index - 1]


def reference_point(suite: str, index: int) -> tuple[float, ...]:
    """Published hypervolume reference point, exactly as registered."""
    return registry_entry(suite, index).reference_point


# loaded-file cache keyed by (path, mtime)
_tabular_cache: dict[tuple[str, float], TabularDb] = {}


def _load_tabular_cached(path: Path) -> TabularDb:
    key = (str(path.resolve()), path.stat().st_mtime)
    if key not in _tabular_cache:
        _tabular_cache.clear()  # keep at most a handful of catalogs resident
        _tabular_cache[key] = load_tabular(path)
    return _tabular_cache[key]


def _build_instance(
    suite: str,
    index: int,
    name: str,
    space_name: str,
    objectives: tuple[ObjectiveDescriptor, ...],
    root: Path,
) -> BenchmarkInstance:
    space = get_space(space_name)
    space_dir = root / space_name
    tab_path = space_dir / "tabular.ndj"
    names = [d.name for d in objectives]
    if tab_path.exists():
        db = _load_tabular_cached(tab_path)
        if db.space != space_name or db.dimension != space.dimension:
            raise SchemaError(
                f"{tab_path}: catalog is for {db.space} (D={db.dimension}), "
                f"expected {space_name} (D={space.dimension})"
            )
        missing = [n for n in names if n not in db.objectives]
        if missing:
            raise SchemaError(f"{tab_path}: catalog lacks objectives {missing}")
        F = _record_matrix(db, names)
        pf = None
        if db.exhaustive:
            pf = np.unique(F[nondominated_mask(F)], axis=0)
            ref = tuple(float(v) for v in pf.max(axis=0))
        else:
            ref = tuple(float(v) for v in F.max(axis=0))
        instance = BenchmarkInstance(
            suite=suite,
            index=index,
            name=name,
            space=space,
            objectives=objectives,
            evaluators=EvaluatorBundle(tabular=db),
            reference_point=ref,
            pf_available=db.exhaustive,
            normalized=db.exhaustive,
        )
        if pf is not None:
            instance._cache["pf"] = pf
        return instance

    ens_path = space_dir / "ensemble.mdl"
    lut_path = space_dir / "lut.tbl"
    if not ens_path.exists() or not lut_path.exists():
        raise FileNotFoundError(
            f"no data for space {space_name!r} under {root} "
            f"(need tabular.ndj or ensemble.mdl + lut.tbl)"
        )
    ens = load_ensemble(ens_path)
    lut = load_lut(lut_path)
    if ens.space != space_name or lut.space != space_name:
        raise SchemaError(
            f"{space_dir}: files are for {ens.space}/{lut.space}, expected {space_name}"
        )
    missing = [n for n in names[1:] if n not in lut.metrics]
    if missing:
        raise SchemaError(f"{lut_path}: table lacks metrics {missing}")
    ref = []
    for n in names:
        worst = ens.worst if n == "error" else lut.worst
        if n not in worst:
            raise SchemaError(f"{space_dir}: no stored worst value for {n!r}")
        ref.append(float(worst[n]))
    return BenchmarkInstance(
        suite=suite,
        index=index,
        name=name,
        space=space,
        objectives=objectives,
        evaluators=EvaluatorBundle(ensemble=ens, lut=lut),
        reference_point=tuple(ref),
        pf_available=False,
        normalized=False,
    )


def instantiate(suite: str, index: int, data_root: str | Path | None = None) -> BenchmarkInstance:
    """Bind a registered problem to the data under data_root (or $NAXBENCH_DATA)."""
    entry = registry_entry(suite, index)
    root = Path(data_root) if data_root is not None else default_data_root()
    return _build_instance(
        entry.suite, entry.index, entry.name, entry.space, entry.objectives, root
    )


def make_instance(
    space_name: str,
    objective_names: tuple[str, ...] | list[str],
    data_root: str | Path | None = None,
) -> BenchmarkInstance:
    """Ad-hoc instance over any space and objective selection (error first)."""
    if not objective_names or objective_names[0] != "error":
        raise ValueError("objective selection must start with 'error'")
    objectives = tuple(_desc(n) for n in objective_names)
    root = Path(data_root) if data_root is not None else default_data_root()
    name = f"{space_name}/" + "+".join(objective_names)
    return _build_instance("custom", 0, name, space_name, objectives, root)


def _record_matrix(db: TabularDb, names: list[str]) -> np.ndarray:
    """Objective matrix over all records, mean error repetitions first."""
    recs = list(db.records.values())
    F = np.empty((len(recs), len(names)))
    for i, rec in enumerate(recs):
        F[i, 0] = float(np.mean(rec.fe_reps))
        for j, n in enumerate(names[1:], start=1):
            F[i, j] = rec.metric(n)
    return F


def true_pareto_front(instance: BenchmarkInstance) -> np.ndarray:
    """Nondominated set over the full catalog, using mean error repetitions.

    Only exhaustive tabular instances support this; rows are unique and
    sorted lexicographically.
    """
    if not instance.pf_available:
        raise ValueError(f"{instance.name}: true front unavailable for this data")
    cached = instance._cache.get("pf")
    if cached is not None:
        return cached
    db: TabularDb = instance.evaluators.tabular
    names = [d.name for d in instance.objectives]
    F = _record_matrix(db, names)
    pf = np.unique(F[nondominated_mask(F)], axis=0)
    instance._cache["pf"] = pf
    return pf
