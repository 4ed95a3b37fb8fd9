"""Data stores and the synthetic landscape generator.

Three on-disk artifacts back the benchmarks (schemas in docs/formats.md):

* ``tabular.ndj``  - newline-delimited JSON, one header object then one
  record per architecture with repeated error measurements, complexity
  stats, and per-device hardware metrics;
* ``ensemble.mdl`` - a pool of small MLP regressors plus featurizer name,
  used where error must be predicted rather than looked up;
* ``lut.tbl``      - additive lookup table mapping operation/layer keys to
  per-metric costs.

A data root holds one subdirectory per space:
``<root>/<space>/tabular.ndj`` or ``<root>/<space>/{ensemble.mdl,lut.tbl}``.
The NAXBENCH_DATA environment variable names the default root.

gen_synthetic builds statistically honest stand-in data as a pure function
of (space, profile, seed): the error landscape is a sum of Gaussian basins
over Hamming distance to planted optima plus clipped observation noise,
the complexity pair is generated with Pearson correlation ~= rho, and
scales differ by orders of magnitude across objectives.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .core import (
    Genotype,
    SchemaError,
    UnknownSolutionError,
)
from .spaces import SpaceCodec, get_space

FORMAT_VERSION = 1

# spaces whose error objective is looked up in a table vs predicted
TABULAR_SPACES = ("nb101", "nb201", "nats")
SURROGATE_SPACES = ("darts", "resnet50", "transformer", "mnv3")


@dataclass(frozen=True)
class FitnessRecord:
    """Stored measurements for one architecture.

    fe_reps holds repeated error observations in [0, 1]; complexity and
    hardware metrics are deterministic scalars keyed by objective name
    ("params", "latency@gpu", ...).
    """

    x: Genotype
    fe_reps: tuple[float, ...]
    complexity: dict[str, float]
    hardware: dict[str, dict[str, float]]

    def __post_init__(self) -> None:
        if not self.fe_reps:
            raise ValueError("fe_reps must hold at least one repetition")
        if any(not 0.0 <= v <= 1.0 for v in self.fe_reps):
            raise ValueError("fe_reps values must lie in [0, 1]")

    def metric(self, name: str) -> float:
        """Deterministic metric by objective name; raises KeyError when absent."""
        if "@" in name:
            metric, device = name.split("@", 1)
            return self.hardware[device][metric]
        return self.complexity[name]


@dataclass
class TabularDb:
    """All records of one space, keyed by genotype."""

    space: str
    dimension: int
    objectives: tuple[str, ...]
    exhaustive: bool
    records: dict[Genotype, FitnessRecord]

    def lookup(self, x: Sequence[int]) -> FitnessRecord:
        key = tuple(int(v) for v in x)
        try:
            return self.records[key]
        except KeyError:
            raise UnknownSolutionError(f"no record for genotype {list(key)}") from None


@dataclass
class MlpModel:
    """Plain feed-forward net: ReLU on every layer except the last."""

    layers: list[tuple[np.ndarray, np.ndarray]]  # (weights, bias) per layer


@dataclass
class SurrogateEnsemble:
    """Pool of regressors; evaluation draws one member per solution."""

    space: str
    featurizer: str
    feature_dim: int
    models: list[MlpModel]
    worst: dict[str, float] = field(default_factory=dict)


@dataclass
class LookupTable:
    """Additive per-key costs; architecture metrics are sums over its keys."""

    space: str
    metrics: tuple[str, ...]
    entries: dict[str, dict[str, float]]
    worst: dict[str, float] = field(default_factory=dict)

    def accumulate(self, keys: Iterable[str]) -> dict[str, float]:
        totals = dict.fromkeys(self.metrics, 0.0)
        for key in keys:
            try:
                row = self.entries[key]
            except KeyError:
                raise UnknownSolutionError(f"no table entry for key {key!r}") from None
            for m in self.metrics:
                totals[m] += row[m]
        return totals


# ---------------------------------------------------------------------------
# file I/O


def _schema(cond: bool, line: int, msg: str) -> None:
    if not cond:
        raise SchemaError(f"line {line}: {msg}")


def load_tabular(path: str | Path) -> TabularDb:
    """Parse a tabular.ndj file; SchemaError messages carry 1-based line numbers."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header_line = fh.readline()
        _schema(bool(header_line.strip()), 1, "missing header object")
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"line 1: {exc}") from None
        _schema(isinstance(header, dict), 1, "header must be an object")
        _schema(header.get("v") == FORMAT_VERSION, 1, f"expected v={FORMAT_VERSION}")
        _schema(header.get("kind") == "tabular", 1, "expected kind='tabular'")
        for key in ("space", "D", "objectives"):
            _schema(key in header, 1, f"header missing {key!r}")
        space = header["space"]
        dim = header["D"]
        objectives = tuple(header["objectives"])
        _schema(objectives[:1] == ("error",), 1, "first objective must be 'error'")
        exhaustive = bool(header.get("exhaustive", False))

        records: dict[Genotype, FitnessRecord] = {}
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"line {lineno}: {exc}") from None
            for key in ("x", "fe"):
                _schema(key in obj, lineno, f"record missing {key!r}")
            x = obj["x"]
            _schema(
                isinstance(x, list) and len(x) == dim,
                lineno,
                f"x must be a list of {dim} ints",
            )
            fe = obj["fe"]
            _schema(
                isinstance(fe, list) and len(fe) >= 1,
                lineno,
                "fe must be a non-empty list",
            )
            _schema(
                all(isinstance(v, (int, float)) and 0.0 <= v <= 1.0 for v in fe),
                lineno,
                "fe values must lie in [0, 1]",
            )
            comp = obj.get("c", {})
            hard = obj.get("h", {})
            for name in objectives[1:]:
                if "@" in name:
                    metric, device = name.split("@", 1)
                    _schema(
                        metric in hard.get(device, {}),
                        lineno,
                        f"record missing hardware metric {name!r}",
                    )
                else:
                    _schema(name in comp, lineno, f"record missing complexity {name!r}")
            key = tuple(int(v) for v in x)
            records[key] = FitnessRecord(
                x=key,
                fe_reps=tuple(float(v) for v in fe),
                complexity={k: float(v) for k, v in comp.items()},
                hardware={d: {k: float(v) for k, v in m.items()} for d, m in hard.items()},
            )
    return TabularDb(
        space=space,
        dimension=dim,
        objectives=objectives,
        exhaustive=exhaustive,
        records=records,
    )


def save_tabular(db: TabularDb, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        header = {
            "v": FORMAT_VERSION,
            "kind": "tabular",
            "space": db.space,
            "D": db.dimension,
            "objectives": list(db.objectives),
            "exhaustive": db.exhaustive,
        }
        fh.write(json.dumps(header) + "\n")
        for rec in db.records.values():
            row: dict[str, Any] = {"x": list(rec.x), "fe": list(rec.fe_reps)}
            if rec.complexity:
                row["c"] = rec.complexity
            if rec.hardware:
                row["h"] = rec.hardware
            fh.write(json.dumps(row) + "\n")


def load_ensemble(path: str | Path) -> SurrogateEnsemble:
    path = Path(path)
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}: {exc.msg}") from None
    if not isinstance(obj, dict) or obj.get("kind") != "ensemble":
        raise SchemaError("line 1: expected a kind='ensemble' object")
    if obj.get("v") != FORMAT_VERSION:
        raise SchemaError(f"line 1: expected v={FORMAT_VERSION}")
    for key in ("space", "featurizer", "feature_dim", "models"):
        if key not in obj:
            raise SchemaError(f"line 1: missing {key!r}")
    models = []
    for mi, m in enumerate(obj["models"]):
        layers = []
        for li, layer in enumerate(m.get("layers", [])):
            if "w" not in layer or "b" not in layer:
                raise SchemaError(f"model {mi} layer {li}: needs 'w' and 'b'")
            w = np.asarray(layer["w"], dtype=float)
            b = np.asarray(layer["b"], dtype=float)
            if w.ndim != 2 or b.ndim != 1 or w.shape[1] != b.shape[0]:
                raise SchemaError(f"model {mi} layer {li}: shape mismatch")
            layers.append((w, b))
        if not layers:
            raise SchemaError(f"model {mi}: no layers")
        models.append(MlpModel(layers=layers))
    if not models:
        raise SchemaError("ensemble holds no models")
    return SurrogateEnsemble(
        space=obj["space"],
        featurizer=obj["featurizer"],
        feature_dim=int(obj["feature_dim"]),
        models=models,
        worst={k: float(v) for k, v in obj.get("worst", {}).items()},
    )


def save_ensemble(ens: SurrogateEnsemble, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    obj = {
        "v": FORMAT_VERSION,
        "kind": "ensemble",
        "space": ens.space,
        "featurizer": ens.featurizer,
        "feature_dim": ens.feature_dim,
        "models": [
            {
                "layers": [
                    {"w": [[float(v) for v in row] for row in w], "b": [float(v) for v in b]}
                    for w, b in m.layers
                ]
            }
            for m in ens.models
        ],
        "worst": ens.worst,
    }
    # json keeps full float precision (repr round-trips), well past 9 digits
    path.write_text(json.dumps(obj), encoding="utf-8")


def load_lut(path: str | Path) -> LookupTable:
    path = Path(path)
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}: {exc.msg}") from None
    if not isinstance(obj, dict) or obj.get("kind") != "lut":
        raise SchemaError("line 1: expected a kind='lut' object")
    if obj.get("v") != FORMAT_VERSION:
        raise SchemaError(f"line 1: expected v={FORMAT_VERSION}")
    for key in ("space", "metrics", "entries"):
        if key not in obj:
            raise SchemaError(f"line 1: missing {key!r}")
    metrics = tuple(obj["metrics"])
    entries = {}
    for key, row in obj["entries"].items():
        missing = [m for m in metrics if m not in row]
        if missing:
            raise SchemaError(f"entry {key!r}: missing metrics {missing}")
        entries[key] = {m: float(row[m]) for m in metrics}
    return LookupTable(
        space=obj["space"],
        metrics=metrics,
        entries=entries,
        worst={k: float(v) for k, v in obj.get("worst", {}).items()},
    )


def save_lut(lut: LookupTable, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    obj = {
        "v": FORMAT_VERSION,
        "kind": "lut",
        "space": lut.space,
        "metrics": list(lut.metrics),
        "entries": lut.entries,
        "worst": lut.worst,
    }
    path.write_text(json.dumps(obj), encoding="utf-8")


def data_root() -> Path:
    """Default data root: $NAXBENCH_DATA or ./naxbench-data."""
    return Path(os.environ.get("NAXBENCH_DATA", "naxbench-data"))


# ---------------------------------------------------------------------------
# synthetic generation

_DEFAULT_SCALES = {
    "params": 1e6,
    "flops": 1e8,
    "latency": 1e-2,
    "energy": 2e-2,
    "arith_intensity": 25.0,
}

_DEFAULT_DEVICES: dict[str, dict[str, tuple[str, ...]]] = {
    "nb201": {"gpu": ("latency", "energy"), "eyeriss": ("latency", "energy", "arith_intensity")},
    "nats": {"gpu": ("latency",)},
    "mnv3": {"note10": ("latency",)},
}


@dataclass
class SynthProfile:
    """Knobs of the synthetic landscape; a pure function of these plus a seed.

    modes is the number of planted error basins (>= 2 keeps the landscape
    multi-modal), sigma the observation-noise std, rho the target Pearson
    correlation of the params/flops pair, scales the per-metric magnitudes
    (the badly-scaled factors).  subset caps the record count for spaces
    too large to enumerate; None means exhaustive where possible.
    """

    modes: int = 2
    sigma: float = 0.01
    rho: float = 0.9
    reps: int = 3
    scales: dict[str, float] = field(default_factory=lambda: dict(_DEFAULT_SCALES))
    devices: dict[str, tuple[str, ...]] = field(default_factory=dict)
    subset: int | None = None
    basin_width: float | None = None
    n_train: int = 512
    ensemble_k: int = 10
    hidden: int = 32

    def __post_init__(self) -> None:
        if self.modes < 2:
            raise ValueError("profiles must plant at least two basins")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must lie in [0, 1]")
        if self.sigma < 0.0:
            raise ValueError("sigma must be non-negative")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, obj: dict) -> "SynthProfile":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown profile fields: {sorted(unknown)}")
        prof = cls(**obj)
        prof.devices = {d: tuple(ms) for d, ms in prof.devices.items()}
        return prof


def default_profile(space: str) -> SynthProfile:
    prof = SynthProfile()
    prof.devices = dict(_DEFAULT_DEVICES.get(space, {}))
    if space == "nb101":
        prof.subset = 4096
    return prof


def _plant_optima(
    space: SpaceCodec, rng: np.random.Generator, modes: int
) -> list[Genotype]:
    """Pick well-separated valid genotypes to anchor the error basins."""
    min_dist = max(2, round(0.6 * space.dimension))
    optima = [space.sample(rng, 1)[0]]
    for _ in range(modes - 1):
        best, best_d = None, -1
        for _attempt in range(64):
            cand = space.sample(rng, 1)[0]
            d = min(_hamming(cand, o) for o in optima)
            if d >= min_dist:
                best = cand
                break
            if d > best_d:
                best, best_d = cand, d
        optima.append(best)
    return optima


def _hamming(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(u != v for u, v in zip(a, b))


def _fe_landscape(
    X: np.ndarray,
    optima: list[Genotype],
    amps: np.ndarray,
    width: float,
    base: float = 0.5,
) -> np.ndarray:
    """Noise-free error surface: base minus Gaussian basins over Hamming distance."""
    fe = np.full(X.shape[0], base)
    for o, amp in zip(optima, amps):
        d = (X != np.asarray(o)).sum(axis=1)
        fe -= amp * np.exp(-((d / width) ** 2))
    return np.clip(fe, 0.01, 0.99)


def _position_tables(
    rng: np.random.Generator, cards: Sequence[int]
) -> list[np.ndarray]:
    """Zero-mean per-position value tables; record scores are sums over positions."""
    tables = []
    for c in cards:
        t = rng.uniform(0.0, 1.0, size=c)
        tables.append(t - t.mean())
    return tables


def _correlated_partner(
    z: np.ndarray,
    rho: float,
    rng: np.random.Generator,
    eligible: np.ndarray | None = None,
    spike_rate: float = 1 / 64,
) -> np.ndarray:
    """Second member of the complexity pair, sample Pearson exactly rho.

    The partner is a strictly increasing function of z for all but a sparse
    set of records that carry a one-sided upward spike.  Concentrating the
    decorrelation mass in rare spikes keeps the pair's rank agreement near 1
    for rho close to 1 (a bivariate-normal pair at Pearson 0.95 would only
    reach Kendall tau ~0.8), which is what makes near-degenerate fronts.
    `eligible` restricts which records may spike (the generator excludes
    strong-corner records so spiked rows cannot reach the front).  The spike
    vector is projected orthogonal to z and variance-matched, so the sample
    correlation equals rho up to rounding; at rho = 1 the spike term
    vanishes and the pair is exactly affine.
    """
    if rho >= 1.0:
        return z.copy()
    draws = rng.random(z.shape[0])
    spikes = (draws < spike_rate).astype(float)
    if eligible is not None:
        spikes *= eligible.astype(float)
    zc = z - z.mean()
    s = spikes - spikes.mean()
    denom = float(zc @ zc)
    if denom > 0:
        s = s - (float(s @ zc) / denom) * zc
    norm = float(s @ s)
    if norm > 0 and denom > 0:
        s = s * math.sqrt(denom / norm)
    return rho * z + math.sqrt(1.0 - rho * rho) * s


def _orthonormalize(
    against: list[np.ndarray], tables: list[np.ndarray]
) -> list[np.ndarray]:
    """Make `tables` uncorrelated with `against` and equal in total variance.

    Uniform-x covariance of two table sums is the sum of per-position value
    covariances, so removing one global projection and rescaling once makes
    the mixed pair hit the requested Pearson correlation exactly.
    """
    var_a = sum(float((a ** 2).mean()) for a in against)
    cov = sum(float((a * b).mean()) for a, b in zip(against, tables))
    lam = cov / var_a if var_a > 0 else 0.0
    resid = [b - lam * a for a, b in zip(against, tables)]
    var_r = sum(float((r ** 2).mean()) for r in resid)
    scale = math.sqrt(var_a / var_r) if var_r > 0 else 0.0
    return [scale * r for r in resid]


def _table_scores(tables: list[np.ndarray], X: np.ndarray) -> np.ndarray:
    score = np.zeros(X.shape[0])
    for i, t in enumerate(tables):
        score += t[X[:, i]]
    return score


def _normalize(score: np.ndarray, tables: list[np.ndarray]) -> np.ndarray:
    var = sum(float((t ** 2).mean()) for t in tables)
    return score / math.sqrt(var) if var > 0 else score


def gen_synthetic(
    space_name: str, profile: SynthProfile, seed: int
) -> TabularDb | tuple[SurrogateEnsemble, LookupTable]:
    """Build synthetic data for one space; deterministic in (space, profile, seed)."""
    space = get_space(space_name)
    rng = np.random.default_rng(seed)
    if space_name in TABULAR_SPACES:
        return _gen_tabular(space, profile, rng)
    return _gen_surrogate(space, profile, rng)


def _record_set(space: SpaceCodec, profile: SynthProfile, rng: np.random.Generator) -> tuple[np.ndarray, bool]:
    if profile.subset is None:
        # UnsupportedSpaceError propagates for non-enumerable spaces
        X = np.array(list(space.enumerate_genotypes()), dtype=int)
        return X, True
    if profile.subset > space.descriptor.size:
        raise ValueError(
            f"subset {profile.subset} exceeds the {space.descriptor.size} members of {space.name}"
        )
    seen: dict[Genotype, None] = {}
    while len(seen) < profile.subset:
        for x in space.sample(rng, profile.subset - len(seen)):
            seen.setdefault(x, None)
    return np.array(list(seen), dtype=int), False


def _gen_tabular(
    space: SpaceCodec, profile: SynthProfile, rng: np.random.Generator
) -> TabularDb:
    D = space.dimension
    width = profile.basin_width or max(1.5, D / 4.0)
    optima = _plant_optima(space, rng, profile.modes)
    amps = rng.uniform(0.15, 0.25, size=profile.modes)

    cards = space.cardinalities
    tab_a = _position_tables(rng, cards)
    hw_tables = {
        dev: {m: _position_tables(rng, cards) for m in metrics}
        for dev, metrics in sorted(profile.devices.items())
    }

    X, exhaustive = _record_set(space, profile, rng)
    fe_mean = _fe_landscape(X, optima, amps, width)
    noise = rng.normal(0.0, profile.sigma, size=(X.shape[0], profile.reps)) if profile.sigma > 0 else np.zeros((X.shape[0], profile.reps))
    fe_reps = np.clip(fe_mean[:, None] + noise, 0.0, 1.0)

    z_params = np.clip(_normalize(_table_scores(tab_a, X), tab_a), -4, 4)
    # spikes stay away from the low-fe/low-params corners that form fronts
    eligible = (fe_mean > np.quantile(fe_mean, 0.1)) & (
        z_params > np.quantile(z_params, 0.1)
    )
    z_flops = _correlated_partner(z_params, profile.rho, rng, eligible)
    params = profile.scales["params"] * (1.0 + 0.15 * z_params)
    flops = profile.scales["flops"] * (1.0 + 0.15 * z_flops)

    hw_values: dict[str, dict[str, np.ndarray]] = {}
    for dev, metrics in sorted(profile.devices.items()):
        hw_values[dev] = {}
        for m in metrics:
            z = _normalize(_table_scores(hw_tables[dev][m], X), hw_tables[dev][m])
            hw_values[dev][m] = profile.scales[m] * (1.0 + 0.15 * np.clip(z, -4, 4))

    objectives = ["error", "params", "flops"]
    for dev, metrics in sorted(profile.devices.items()):
        objectives += [f"{m}@{dev}" for m in metrics]

    records: dict[Genotype, FitnessRecord] = {}
    for i, row in enumerate(X):
        key = tuple(int(v) for v in row)
        hardware = {
            dev: {m: float(vals[m][i]) for m in profile.devices[dev]}
            for dev, vals in hw_values.items()
        }
        records[key] = FitnessRecord(
            x=key,
            fe_reps=tuple(float(v) for v in fe_reps[i]),
            complexity={"params": float(params[i]), "flops": float(flops[i])},
            hardware=hardware,
        )
    return TabularDb(
        space=space.name,
        dimension=D,
        objectives=tuple(objectives),
        exhaustive=exhaustive,
        records=records,
    )


def _gen_surrogate(
    space: SpaceCodec, profile: SynthProfile, rng: np.random.Generator
) -> tuple[SurrogateEnsemble, LookupTable]:
    D = space.dimension
    width = profile.basin_width or max(1.5, D / 4.0)
    optima = _plant_optima(space, rng, profile.modes)
    amps = rng.uniform(0.15, 0.25, size=profile.modes)

    # additive cost table over the space's decomposition keys
    keys = space.all_lut_keys()
    rho = profile.rho
    u = rng.normal(0.0, 1.0, size=len(keys))
    v = rng.normal(0.0, 1.0, size=len(keys))
    v = _orthonormalize([u], [v])[0]
    mixed = rho * u + math.sqrt(1.0 - rho * rho) * v
    metric_names = ["params", "flops"]
    for dev, ms in sorted(profile.devices.items()):
        metric_names += [f"{m}@{dev}" for m in ms]
    entries: dict[str, dict[str, float]] = {}
    extra = {
        name: rng.normal(0.0, 1.0, size=len(keys))
        for name in metric_names[2:]
    }
    nominal = 8.0  # typical keys per architecture, for scale bookkeeping
    for i, key in enumerate(keys):
        row = {
            "params": profile.scales["params"] * (1.0 + 0.15 * float(np.clip(u[i], -4, 4))) / nominal,
            "flops": profile.scales["flops"] * (1.0 + 0.15 * float(np.clip(mixed[i], -4, 4))) / nominal,
        }
        for name in metric_names[2:]:
            base = name.split("@", 1)[0]
            row[name] = profile.scales[base] * (1.0 + 0.15 * float(np.clip(extra[name][i], -4, 4))) / nominal
        entries[key] = row

    # train sample and targets from the planted landscape
    sample = space.sample(rng, profile.n_train)
    X = np.array(sample, dtype=int)
    y = _fe_landscape(X, optima, amps, width)
    feats = one_hot_features(space, X)

    models = []
    fold = rng.integers(0, profile.ensemble_k, size=X.shape[0])
    for k in range(profile.ensemble_k):
        train = fold != k
        w1 = rng.normal(0.0, 1.0 / math.sqrt(feats.shape[1]), size=(feats.shape[1], profile.hidden))
        b1 = rng.normal(0.0, 0.1, size=profile.hidden)
        h = np.maximum(feats[train] @ w1 + b1, 0.0)
        ha = np.hstack([h, np.ones((h.shape[0], 1))])
        lam = 1e-3
        gram = ha.T @ ha + lam * np.eye(ha.shape[1])
        sol = np.linalg.solve(gram, ha.T @ y[train])
        w2 = sol[:-1].reshape(-1, 1)
        b2 = sol[-1:].copy()
        models.append(MlpModel(layers=[(w1, b1), (w2, b2)]))

    ensemble = SurrogateEnsemble(
        space=space.name,
        featurizer="onehot",
        feature_dim=feats.shape[1],
        models=models,
        worst={"error": float(y.max())},
    )

    lut = LookupTable(
        space=space.name,
        metrics=tuple(metric_names),
        entries=entries,
        worst={},
    )
    totals = {m: [] for m in metric_names}
    for x in sample:
        acc = lut.accumulate(space.lut_keys(space.decode(x)))
        for m in metric_names:
            totals[m].append(acc[m])
    lut.worst = {m: float(max(vs)) for m, vs in totals.items()}
    return ensemble, lut


def one_hot_features(space: SpaceCodec, X: np.ndarray) -> np.ndarray:
    """One-hot encode a genotype matrix; feature dim = sum of cardinalities."""
    X = np.atleast_2d(np.asarray(X, dtype=int))
    offsets = np.cumsum([0] + list(space.cardinalities[:-1]))
    dim = sum(space.cardinalities)
    feats = np.zeros((X.shape[0], dim))
    cols = X + offsets
    feats[np.arange(X.shape[0])[:, None], cols] = 1.0
    return feats


def write_space_data(
    root: str | Path, space_name: str, profile: SynthProfile, seed: int
) -> list[Path]:
    """Generate and write one space's files under <root>/<space>/; returns paths."""
    root = Path(root)
    out_dir = root / space_name
    data = gen_synthetic(space_name, profile, seed)
    if isinstance(data, TabularDb):
        path = out_dir / "tabular.ndj"
        save_tabular(data, path)
        return [path]
    ensemble, lut = data
    e_path = out_dir / "ensemble.mdl"
    l_path = out_dir / "lut.tbl"
    save_ensemble(ensemble, e_path)
    save_lut(lut, l_path)
    return [e_path, l_path]
