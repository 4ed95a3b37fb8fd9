"""Macro spaces: staged backbones with per-stage depth and per-block knobs.

All three codecs share the same convention: a depth choice activates a
prefix of each stage's block slots, inert slots are ignored by decode and
written back as 0 by encode, so encodings are many-to-one while the
canonical phenotype lists active blocks only.

resnet50 (D=25): positions 0..4 pick each stage's depth from {2, 3, 4};
positions 5..24 are 4 block slots per stage choosing a bottleneck expand
ratio from {0.1, 0.15, 0.2, 0.25, 0.35}.

transformer (D=34): position 0 picks the embedding width {320, 384, 448},
position 1 the depth {12, 13, 14}; positions 2..17 choose each layer's MLP
ratio {3.0, 3.5, 4.0} and 18..33 its head count {5, 6, 7} over 16 layer
slots.

mnv3 (D=21): position 0 picks the input resolution {160, 176, 192, 208};
positions 1..20 are 4 block slots per stage over 10 choices, 0 = skip and
1..9 = kernel {3, 5, 7} x expand {3, 4, 6}.  Validity requires each
stage's skips to sit at the tail and at least 2 active blocks per stage.
"""

from __future__ import annotations

from typing import Sequence

from ..core import PhenotypeParseError, SearchSpaceDescriptor
from .base import SpaceCodec


class ResNet50Space(SpaceCodec):

    DEPTHS = (2, 3, 4)
    RATIOS = ("0.1", "0.15", "0.2", "0.25", "0.35")
    N_STAGES = 5
    SLOTS = 4

    descriptor = SearchSpaceDescriptor(
        name="resnet50",
        dimension=25,
        cardinalities=(3,) * 5 + (5,) * 20,
        # distinct architectures: per stage, sum over depths of 5**depth
        size=(5 ** 2 + 5 ** 3 + 5 ** 4) ** 5,
    )

    def is_valid(self, x: Sequence[int]) -> bool:
        self.check(x)
        return True

    def decode(self, x: Sequence[int]) -> str:
        x = self.check(x)
        segs = []
        for s in range(self.N_STAGES):
            depth = self.DEPTHS[x[s]]
            base = self.N_STAGES + self.SLOTS * s
            toks = ",".join(f"e{self.RATIOS[x[base + b]]}" for b in range(depth))
            segs.append(f"d{depth}:{toks}")
        return ";".join(segs)

    def encode(self, phenotype: str) -> tuple[int, ...]:
        segs = phenotype.split(";")
        if len(segs) != self.N_STAGES:
            raise PhenotypeParseError(
                f"expected {self.N_STAGES} stage segments, got {len(segs)}"
            )
        depth_vals = []
        block_vals = [0] * (self.N_STAGES * self.SLOTS)
        for s, seg in enumerate(segs):
            head, _, toks = seg.partition(":")
            if not head.startswith("d") or not head[1:].isdigit():
                raise PhenotypeParseError(f"stage {s}: expected 'd<depth>:'")
            depth = int(head[1:])
            if depth not in self.DEPTHS:
                raise PhenotypeParseError(
                    f"stage {s}: depth {depth} not in {self.DEPTHS}"
                )
            blocks = toks.split(",") if toks else []
            if len(blocks) != depth:
                raise PhenotypeParseError(
                    f"stage {s}: {len(blocks)} blocks listed for depth {depth}"
                )
            depth_vals.append(self.DEPTHS.index(depth))
            for b, tok in enumerate(blocks):
                if not tok.startswith("e") or tok[1:] not in self.RATIOS:
                    raise PhenotypeParseError(f"stage {s} block {b}: bad token {tok!r}")
                block_vals[self.SLOTS * s + b] = self.RATIOS.index(tok[1:])
        return tuple(depth_vals) + tuple(block_vals)

    def lut_keys(self, phenotype: str) -> list[str]:
        keys = ["stem"]
        for s, seg in enumerate(phenotype.split(";")):
            for tok in seg.partition(":")[2].split(","):
                keys.append(f"s{s}:{tok}")
        return keys

    def all_lut_keys(self) -> list[str]:
        return ["stem"] + [
            f"s{s}:e{r}" for s in range(self.N_STAGES) for r in self.RATIOS
        ]


class TransformerSpace(SpaceCodec):

    EMBED = (320, 384, 448)
    DEPTHS = (12, 13, 14)
    MLP = ("3.0", "3.5", "4.0")
    HEADS = (5, 6, 7)
    SLOTS = 16

    descriptor = SearchSpaceDescriptor(
        name="transformer",
        dimension=34,
        cardinalities=(3,) * 34,
        # distinct: embed choices x sum over depths of (3*3)**depth
        size=3 * (9 ** 12 + 9 ** 13 + 9 ** 14),
    )

    def is_valid(self, x: Sequence[int]) -> bool:
        self.check(x)
        return True

    def decode(self, x: Sequence[int]) -> str:
        x = self.check(x)
        depth = self.DEPTHS[x[1]]
        layers = ",".join(
            f"m{self.MLP[x[2 + i]]}h{self.HEADS[x[2 + self.SLOTS + i]]}"
            for i in range(depth)
        )
        return f"e{self.EMBED[x[0]]};{layers}"

    def encode(self, phenotype: str) -> tuple[int, ...]:
        head, _, rest = phenotype.partition(";")
        if not head.startswith("e") or not head[1:].isdigit():
            raise PhenotypeParseError("expected 'e<width>;' prefix")
        width = int(head[1:])
        if width not in self.EMBED:
            raise PhenotypeParseError(f"embed width {width} not in {self.EMBED}")
        layers = rest.split(",") if rest else []
        if len(layers) not in self.DEPTHS:
            raise PhenotypeParseError(
                f"{len(layers)} layers listed, expected one of {self.DEPTHS}"
            )
        mlp_vals = [0] * self.SLOTS
        head_vals = [0] * self.SLOTS
        for i, tok in enumerate(layers):
            m, _, h = tok.partition("h")
            if not m.startswith("m") or m[1:] not in self.MLP or not h.isdigit():
                raise PhenotypeParseError(f"layer {i}: bad token {tok!r}")
            if int(h) not in self.HEADS:
                raise PhenotypeParseError(
                    f"layer {i}: head count {h} not in {self.HEADS}"
                )
            mlp_vals[i] = self.MLP.index(m[1:])
            head_vals[i] = self.HEADS.index(int(h))
        return (
            self.EMBED.index(width),
            self.DEPTHS.index(len(layers)),
            *mlp_vals,
            *head_vals,
        )

    def lut_keys(self, phenotype: str) -> list[str]:
        head, _, rest = phenotype.partition(";")
        return [f"{head}:stem"] + [f"{head}:{tok}" for tok in rest.split(",")]

    def all_lut_keys(self) -> list[str]:
        keys = [f"e{w}:stem" for w in self.EMBED]
        keys += [
            f"e{w}:m{m}h{h}"
            for w in self.EMBED
            for m in self.MLP
            for h in self.HEADS
        ]
        return keys


class MNV3Space(SpaceCodec):

    RESOLUTIONS = (160, 176, 192, 208)
    KERNELS = (3, 5, 7)
    EXPANDS = (3, 4, 6)
    N_STAGES = 5
    SLOTS = 4
    MIN_ACTIVE = 2

    descriptor = SearchSpaceDescriptor(
        name="mnv3",
        dimension=21,
        cardinalities=(4,) + (10,) * 20,
        # distinct: resolutions x (sum over stage depths 2..4 of 9**depth)**5
        size=4 * (9 ** 2 + 9 ** 3 + 9 ** 4) ** 5,
    )

    def _block_token(self, v: int) -> str:
        k = self.KERNELS[(v - 1) // len(self.EXPANDS)]
        e = self.EXPANDS[(v - 1) % len(self.EXPANDS)]
        return f"k{k}e{e}"

    def is_valid(self, x: Sequence[int]) -> bool:
        x = self.check(x)
        for s in range(self.N_STAGES):
            stage = x[1 + self.SLOTS * s: 1 + self.SLOTS * (s + 1)]
            active = 0
            seen_skip = False
            for v in stage:
                if v == 0:
                    seen_skip = True
                elif seen_skip:
                    return False  # active block after a skip
                else:
                    active += 1
            if active < self.MIN_ACTIVE:
                return False
        return True

    def decode(self, x: Sequence[int]) -> str:
        x = self.check(x)
        segs = []
        for s in range(self.N_STAGES):
            stage = x[1 + self.SLOTS * s: 1 + self.SLOTS * (s + 1)]
            toks = []
            for v in stage:
                if v == 0:
                    break
                toks.append(self._block_token(v))
            segs.append(",".join(toks))
        return f"r{self.RESOLUTIONS[x[0]]};" + ";".join(segs)

    def encode(self, phenotype: str) -> tuple[int, ...]:
        parts = phenotype.split(";")
        if len(parts) != 1 + self.N_STAGES:
            raise PhenotypeParseError(
                f"expected resolution plus {self.N_STAGES} stage segments"
            )
        head = parts[0]
        if not head.startswith("r") or not head[1:].isdigit():
            raise PhenotypeParseError("expected 'r<resolution>;' prefix")
        res = int(head[1:])
        if res not in self.RESOLUTIONS:
            raise PhenotypeParseError(
                f"resolution {res} not in {self.RESOLUTIONS}"
            )
        vals = [0] * (self.N_STAGES * self.SLOTS)
        for s, seg in enumerate(parts[1:]):
            toks = seg.split(",") if seg else []
            if not self.MIN_ACTIVE <= len(toks) <= self.SLOTS:
                raise PhenotypeParseError(
                    f"stage {s}: needs {self.MIN_ACTIVE}..{self.SLOTS} blocks, got {len(toks)}"
                )
            for b, tok in enumerate(toks):
                vals[self.SLOTS * s + b] = self._block_value(s, b, tok)
        return (self.RESOLUTIONS.index(res),) + tuple(vals)

    def _block_value(self, s: int, b: int, tok: str) -> int:
        k, _, e = tok.partition("e")
        if not k.startswith("k") or not k[1:].isdigit() or not e.isdigit():
            raise PhenotypeParseError(f"stage {s} block {b}: bad token {tok!r}")
        if int(k[1:]) not in self.KERNELS or int(e) not in self.EXPANDS:
            raise PhenotypeParseError(f"stage {s} block {b}: bad token {tok!r}")
        return 1 + len(self.EXPANDS) * self.KERNELS.index(int(k[1:])) + self.EXPANDS.index(int(e))

    def lut_keys(self, phenotype: str) -> list[str]:
        parts = phenotype.split(";")
        keys = [parts[0]]
        for s, seg in enumerate(parts[1:]):
            keys += [f"s{s}:{tok}" for tok in seg.split(",") if tok]
        return keys

    def all_lut_keys(self) -> list[str]:
        keys = [f"r{r}" for r in self.RESOLUTIONS]
        keys += [
            f"s{s}:k{k}e{e}"
            for s in range(self.N_STAGES)
            for k in self.KERNELS
            for e in self.EXPANDS
        ]
        return keys
