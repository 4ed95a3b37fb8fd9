"""Codec base class: genotype/phenotype conversion plus uniform sampling.

Every space is a fixed-length integer encoding (see docs/grammars.md for
the per-space layouts and phenotype grammars).  decode is total over
in-range genotypes; encode accepts canonical phenotypes of valid
architectures and inverts decode on them.  Encodings may be many-to-one:
the round-trip guarantee is that encode(decode(x)) decodes back to
decode(x) for every valid x.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Iterator, Sequence

import numpy as np

from ..core import (
    Genotype,
    Phenotype,
    SamplingError,
    SearchSpaceDescriptor,
    UnsupportedSpaceError,
    check_genotype,
)

# rejection budget per requested sample, before sampling gives up
_MAX_DRAWS_PER_SAMPLE = 10_000


class SpaceCodec(ABC):
    """One search space: descriptor, validity, codec and sampling."""

    descriptor: SearchSpaceDescriptor

    @property
    def name(self) -> str:
        return self.descriptor.name

    @property
    def dimension(self) -> int:
        return self.descriptor.dimension

    @property
    def cardinalities(self) -> tuple[int, ...]:
        return self.descriptor.cardinalities

    @abstractmethod
    def is_valid(self, x: Sequence[int]) -> bool:
        """Whether the decoded architecture is well-formed."""

    @abstractmethod
    def decode(self, x: Sequence[int]) -> Phenotype:
        """Canonical architecture string for an in-range genotype."""

    @abstractmethod
    def encode(self, phenotype: Phenotype) -> Genotype:
        """Genotype for a canonical phenotype; inverse of decode up to canonicalization."""

    def check(self, x: Sequence[int]) -> Genotype:
        return check_genotype(x, self.cardinalities)

    def sample(self, rng: np.random.Generator, n: int = 1) -> list[Genotype]:
        """Draw n valid genotypes uniformly over in-range values, rejecting invalid ones."""
        cards = np.asarray(self.cardinalities)
        out: list[Genotype] = []
        draws = 0
        budget = _MAX_DRAWS_PER_SAMPLE * n
        chunk = max(2 * n, 64)
        while len(out) < n:
            if draws >= budget:
                raise SamplingError(
                    f"{self.name}: no valid genotype in {draws} draws"
                )
            batch = rng.integers(0, cards, size=(min(chunk, budget - draws), len(cards)))
            draws += batch.shape[0]
            for row in batch:
                t = tuple(int(v) for v in row)
                if self.is_valid(t):
                    out.append(t)
                    if len(out) == n:
                        break
        return out

    def enumerate_genotypes(self) -> Iterator[Genotype]:
        """All valid genotypes in lexicographic order; only enumerable spaces support this."""
        raise UnsupportedSpaceError(f"{self.name} is not enumerable")

    def lut_keys(self, phenotype: Phenotype) -> list[str]:
        """Accumulation keys (with multiplicity) for lookup-table metrics."""
        raise UnsupportedSpaceError(f"{self.name} has no lookup-table decomposition")

    def all_lut_keys(self) -> list[str]:
        """Every key lut_keys can produce, for table generators."""
        raise UnsupportedSpaceError(f"{self.name} has no lookup-table decomposition")
