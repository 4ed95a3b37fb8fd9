"""Width space: one channel count per stage out of 8 choices (D=5).

Genotype value v at any position maps to 8*(v+1) channels, i.e. the table
(8, 16, 24, 32, 40, 48, 56, 64); the phenotype joins the five counts with
colons ("8:16:24:32:40").  All 8**5 assignments are valid.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from ..core import PhenotypeParseError, SearchSpaceDescriptor
from .base import SpaceCodec

CHANNELS = tuple(8 * (v + 1) for v in range(8))
N_STAGES = 5


class NATSSpace(SpaceCodec):

    descriptor = SearchSpaceDescriptor(
        name="nats",
        dimension=N_STAGES,
        cardinalities=(len(CHANNELS),) * N_STAGES,
        size=len(CHANNELS) ** N_STAGES,
    )

    def is_valid(self, x: Sequence[int]) -> bool:
        self.check(x)
        return True

    def decode(self, x: Sequence[int]) -> str:
        x = self.check(x)
        return ":".join(str(CHANNELS[v]) for v in x)

    def encode(self, phenotype: str) -> tuple[int, ...]:
        parts = phenotype.split(":")
        if len(parts) != N_STAGES:
            raise PhenotypeParseError(
                f"expected {N_STAGES} colon-separated counts, got {len(parts)}"
            )
        out = []
        for i, part in enumerate(parts):
            try:
                out.append(CHANNELS.index(int(part)))
            except ValueError:
                raise PhenotypeParseError(
                    f"stage {i}: {part!r} is not one of {CHANNELS}"
                ) from None
        return tuple(out)

    def enumerate_genotypes(self) -> Iterator[tuple[int, ...]]:
        return iter(itertools.product(range(len(CHANNELS)), repeat=N_STAGES))
