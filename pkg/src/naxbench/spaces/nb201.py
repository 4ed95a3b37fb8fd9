"""Cell space with one op per edge of a fixed 4-node DAG (D=6).

Genotype position p picks the op of edge EDGES[p] = (to, from); the
phenotype is the standard cell string

    |op~0|+|op~0|op~1|+|op~0|op~1|op~2|

listing each node's incoming edges tagged with the source node index.
Every in-range genotype is valid, so the space has exactly 5**6 members.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterator, Sequence

from ..core import PhenotypeParseError, SearchSpaceDescriptor
from .base import SpaceCodec

OPS = ("none", "skip", "1x1", "3x3", "avg")

# (destination node, source node) per genotype position
EDGES = ((1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2))

_CELL_RE = re.compile(
    r"^\|(?P<e0>[^~|]+)~0\|"
    r"\+\|(?P<e1>[^~|]+)~0\|(?P<e2>[^~|]+)~1\|"
    r"\+\|(?P<e3>[^~|]+)~0\|(?P<e4>[^~|]+)~1\|(?P<e5>[^~|]+)~2\|$"
)


class NB201Space(SpaceCodec):

    descriptor = SearchSpaceDescriptor(
        name="nb201",
        dimension=6,
        cardinalities=(5,) * 6,
        size=5 ** 6,
    )

    def is_valid(self, x: Sequence[int]) -> bool:
        self.check(x)
        return True

    def decode(self, x: Sequence[int]) -> str:
        x = self.check(x)
        tok = [OPS[v] for v in x]
        return (
            f"|{tok[0]}~0|"
            f"+|{tok[1]}~0|{tok[2]}~1|"
            f"+|{tok[3]}~0|{tok[4]}~1|{tok[5]}~2|"
        )

    def encode(self, phenotype: str) -> tuple[int, ...]:
        m = _CELL_RE.match(phenotype)
        if m is None:
            raise PhenotypeParseError("cell string does not match |op~0|+|..| grammar")
        out = []
        for p in range(6):
            tok = m.group(f"e{p}")
            if tok not in OPS:
                raise PhenotypeParseError(f"edge {p}: unknown op {tok!r}")
            out.append(OPS.index(tok))
        return tuple(out)

    def enumerate_genotypes(self) -> Iterator[tuple[int, ...]]:
        return iter(itertools.product(range(5), repeat=6))
