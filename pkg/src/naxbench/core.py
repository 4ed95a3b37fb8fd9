"""Core types shared by every layer.

A genotype is a fixed-length tuple of non-negative ints, one entry per
decision position; a phenotype is the canonical architecture string a
genotype decodes to.  Descriptors carry the metadata (dimensions,
cardinalities, objective semantics) that the evaluation and search layers
key off.  Everything here is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

Genotype = tuple[int, ...]
Phenotype = str

OBJECTIVE_KINDS = ("error", "complexity", "hardware")


class NaxbenchError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(NaxbenchError, ValueError):
    """A vector's length does not match the space's D."""


class PhenotypeParseError(NaxbenchError, ValueError):
    """A phenotype string fails the space's grammar; message names the position."""


class SamplingError(NaxbenchError, RuntimeError):
    """Rejection sampling failed to produce a valid genotype within budget."""


class SchemaError(NaxbenchError, ValueError):
    """A data file violates its documented schema; message carries the line number."""


class UnknownSolutionError(NaxbenchError, KeyError):
    """A tabular lookup missed; message names the genotype key."""


class UnsupportedSpaceError(NaxbenchError, RuntimeError):
    """The requested operation is not available for this space."""


@dataclass(frozen=True)
class ObjectiveDescriptor:
    """Semantics of one objective column.

    kind is "error" (noisy prediction-error term), "complexity"
    (deterministic model statistics such as params or flops) or "hardware"
    (deterministic per-device measurements).  All objectives are minimized;
    conventionally_maximized records that the raw quantity is usually read
    the other way round (arithmetic intensity) without changing the
    direction used here.
    """

    name: str
    kind: str
    noisy: bool
    unit: str = ""
    hardware_id: str | None = None
    conventionally_maximized: bool = False
    lower: float | None = None
    upper: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in OBJECTIVE_KINDS:
            raise ValueError(f"unknown objective kind {self.kind!r}")
        if self.kind == "error" and not self.noisy:
            raise ValueError("error objectives are noisy by definition")
        if self.kind == "complexity" and self.noisy:
            raise ValueError("complexity objectives are deterministic")
        if self.kind == "hardware" and self.hardware_id is None:
            raise ValueError("hardware objectives need a hardware_id")


@dataclass(frozen=True)
class SearchSpaceDescriptor:
    """Static shape of a search space.

    size is the number of distinct architectures; the product of the
    per-position cardinalities bounds it from above (encodings may be
    many-to-one).
    """

    name: str
    dimension: int
    cardinalities: tuple[int, ...]
    size: int

    def __post_init__(self) -> None:
        if len(self.cardinalities) != self.dimension:
            raise ValueError("cardinalities must have one entry per position")
        if any(c < 1 for c in self.cardinalities):
            raise ValueError("cardinalities must be positive")
        prod = 1
        for c in self.cardinalities:
            prod *= c
        if self.size > prod:
            raise ValueError("size exceeds the product of cardinalities")


@dataclass(frozen=True)
class BenchmarkInstance:
    """One ready-to-evaluate multi-objective problem.

    space is the codec object; evaluators bundles the per-objective
    sources.  reference_point is the hypervolume reference appropriate for
    the loaded data (nadir of the true front for exhaustive data, stored
    worst-sample point otherwise).  pf_available says whether
    true_pareto_front can be computed; normalized says whether full
    objective bounds are known (values are always emitted raw).
    """

    suite: str
    index: int
    name: str
    space: Any
    objectives: tuple[ObjectiveDescriptor, ...]
    evaluators: Any
    reference_point: tuple[float, ...]
    pf_available: bool
    normalized: bool
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.reference_point) != len(self.objectives):
            raise ValueError("reference point length must match objective count")

    @property
    def objective_dim(self) -> int:
        return len(self.objectives)


def objective_dim(instance: BenchmarkInstance) -> int:
    """Number of objectives of an instance."""
    return len(instance.objectives)


def check_genotype(x: Sequence[int], cardinalities: Sequence[int]) -> Genotype:
    """Validate length and per-position range; returns x as a tuple.

    Raises DimensionError on length mismatch and ValueError on an
    out-of-range or non-integer entry.
    """
    if len(x) != len(cardinalities):
        raise DimensionError(
            f"genotype has {len(x)} positions, expected {len(cardinalities)}"
        )
    out = []
    for i, (v, c) in enumerate(zip(x, cardinalities)):
        iv = int(v)
        if iv != v:
            raise ValueError(f"position {i}: value {v!r} is not an integer")
        if not 0 <= iv < c:
            raise ValueError(f"position {i}: value {iv} outside [0, {c})")
        out.append(iv)
    return tuple(out)


def clamp_genotype(x: Sequence[int], cardinalities: Sequence[int]) -> Genotype:
    """Force every entry into range by reducing it modulo its cardinality.

    Length mismatches are not repairable and raise DimensionError.
    """
    if len(x) != len(cardinalities):
        raise DimensionError(
            f"genotype has {len(x)} positions, expected {len(cardinalities)}"
        )
    return tuple(int(v) % c for v, c in zip(x, cardinalities))
