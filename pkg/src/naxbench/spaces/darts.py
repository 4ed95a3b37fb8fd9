"""Two-cell micro space: 4 nodes per cell, two (op, input) pairs each (D=32).

Positions 0..15 describe the normal cell and 16..31 the reduction cell.
Within a cell, node k (k = 0..3) owns four consecutive positions
(in_a, op_a, in_b, op_b); an input value i < k+2 refers to the two cell
inputs (0, 1) or to node i-2 of the same cell, so the input cardinality
grows as 2, 3, 4, 5 while every op position has 8 choices.  All in-range
genotypes are valid and decode injectively, so the codec is a bijection.
"""

from __future__ import annotations

import math
import re
from typing import Sequence

from ..core import PhenotypeParseError, SearchSpaceDescriptor
from .base import SpaceCodec

OPS = ("none", "skip", "sep3x3", "sep5x5", "dil3x3", "dil5x5", "max3", "avg3")
CELLS = ("normal", "reduce")
N_NODES = 4

_CELL_CARDS = tuple(
    c for k in range(N_NODES) for c in (k + 2, len(OPS), k + 2, len(OPS))
)

_PAIR_RE = re.compile(r"^([^~|+;=]+)~(\d+)$")


class DARTSSpace(SpaceCodec):

    descriptor = SearchSpaceDescriptor(
        name="darts",
        dimension=32,
        cardinalities=_CELL_CARDS * 2,
        size=math.prod(_CELL_CARDS) ** 2,
    )

    def is_valid(self, x: Sequence[int]) -> bool:
        self.check(x)
        return True

    def decode(self, x: Sequence[int]) -> str:
        x = self.check(x)
        cells = []
        for c, cell in enumerate(CELLS):
            base = 16 * c
            nodes = []
            for k in range(N_NODES):
                ia, oa, ib, ob = x[base + 4 * k: base + 4 * k + 4]
                nodes.append(f"{OPS[oa]}~{ia}|{OPS[ob]}~{ib}")
            cells.append(f"{cell}=" + "+".join(nodes))
        return ";".join(cells)

    def encode(self, phenotype: str) -> tuple[int, ...]:
        cells = phenotype.split(";")
        if len(cells) != 2:
            raise PhenotypeParseError("expected 'normal=...;reduce=...'")
        out: list[int] = []
        for c, (cell, text) in enumerate(zip(CELLS, cells)):
            prefix = f"{cell}="
            if not text.startswith(prefix):
                raise PhenotypeParseError(f"cell {c}: expected prefix {prefix!r}")
            nodes = text[len(prefix):].split("+")
            if len(nodes) != N_NODES:
                raise PhenotypeParseError(
                    f"cell {cell}: expected {N_NODES} node entries, got {len(nodes)}"
                )
            for k, node in enumerate(nodes):
                pairs = node.split("|")
                if len(pairs) != 2:
                    raise PhenotypeParseError(
                        f"cell {cell} node {k}: expected two op~input pairs"
                    )
                for pair in pairs:
                    m = _PAIR_RE.match(pair)
                    if m is None:
                        raise PhenotypeParseError(
                            f"cell {cell} node {k}: bad pair {pair!r}"
                        )
                    op, src = m.group(1), int(m.group(2))
                    if op not in OPS:
                        raise PhenotypeParseError(
                            f"cell {cell} node {k}: unknown op {op!r}"
                        )
                    if src >= k + 2:
                        raise PhenotypeParseError(
                            f"cell {cell} node {k}: input {src} out of range [0, {k + 2})"
                        )
                    out += [src, OPS.index(op)]
        return tuple(out)

    def lut_keys(self, phenotype: str) -> list[str]:
        x = self.encode(phenotype)
        keys = []
        for c, cell in enumerate(CELLS):
            base = 16 * c
            for k in range(N_NODES):
                keys.append(f"{cell}:{OPS[x[base + 4 * k + 1]]}")
                keys.append(f"{cell}:{OPS[x[base + 4 * k + 3]]}")
        return keys

    def all_lut_keys(self) -> list[str]:
        return [f"{cell}:{op}" for cell in CELLS for op in OPS]
