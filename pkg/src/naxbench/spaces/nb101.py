"""Cell space over 7-node DAGs: 21 adjacency bits plus 5 interior op choices.

Genotype layout (D=26): positions 0..20 are the upper-triangular adjacency
bits of a 7-node DAG in row-major pair order (0,1), (0,2), ..., (5,6);
node 0 is the cell input and node 6 the output.  Positions 21..25 pick the
op of interior nodes 1..5 from {conv3x3, conv1x1, maxpool3x3}.

A genotype is valid when the input reaches the output and the pruned graph
(interior nodes off every input-to-output path removed) has at most 9
edges.  The canonical phenotype describes the pruned graph only, so
encodings are many-to-one.
"""

from __future__ import annotations

from typing import Sequence

from ..core import PhenotypeParseError, SearchSpaceDescriptor
from .base import SpaceCodec

N_NODES = 7
MAX_EDGES = 9
OPS = ("conv3x3", "conv1x1", "maxpool3x3")

# row-major upper-triangular pair order; position p <-> EDGE_PAIRS[p]
EDGE_PAIRS = tuple(
    (i, j) for i in range(N_NODES) for j in range(i + 1, N_NODES)
)


def _adjacency(x: Sequence[int]) -> list[list[int]]:
    adj = [[0] * N_NODES for _ in range(N_NODES)]
    for bit, (i, j) in zip(x, EDGE_PAIRS):
        adj[i][j] = int(bit)
    return adj


def _forward_reach(adj: list[list[int]], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in range(u + 1, N_NODES):
            if adj[u][v] and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def _backward_reach(adj: list[list[int]], goal: int) -> set[int]:
    seen = {goal}
    stack = [goal]
    while stack:
        v = stack.pop()
        for u in range(v):
            if adj[u][v] and u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def _kept_nodes(adj: list[list[int]]) -> list[int]:
    """Input, output, and every interior node on some input-to-output path."""
    fwd = _forward_reach(adj, 0)
    bwd = _backward_reach(adj, N_NODES - 1)
    kept = [0]
    kept += [i for i in range(1, N_NODES - 1) if i in fwd and i in bwd]
    kept.append(N_NODES - 1)
    return kept


class NB101Space(SpaceCodec):

    descriptor = SearchSpaceDescriptor(
        name="nb101",
        dimension=26,
        cardinalities=(2,) * 21 + (3,) * 5,
        size=423_624,
    )

    def is_valid(self, x: Sequence[int]) -> bool:
        x = self.check(x)
        adj = _adjacency(x)
        if N_NODES - 1 not in _forward_reach(adj, 0):
            return False
        kept = _kept_nodes(adj)
        edges = sum(
            adj[u][v] for ai, u in enumerate(kept) for v in kept[ai + 1:]
        )
        return edges <= MAX_EDGES

    def decode(self, x: Sequence[int]) -> str:
        x = self.check(x)
        adj = _adjacency(x)
        kept = _kept_nodes(adj)
        bits = "".join(
            str(adj[u][v]) for ai, u in enumerate(kept) for v in kept[ai + 1:]
        )
        ops = ",".join(OPS[x[21 + i - 1]] for i in kept[1:-1])
        return f"adj={bits};ops={ops}"

    def encode(self, phenotype: str) -> tuple[int, ...]:
        bits, ops = _parse(phenotype)
        k = len(bits_to_nodes(bits))
        # node map: pruned index -> template index (interiors packed low, output last)
        node_of = list(range(k - 1)) + [N_NODES - 1]
        adj_bits = [0] * len(EDGE_PAIRS)
        pos = 0
        for a in range(k):
            for b in range(a + 1, k):
                if bits[pos] == "1":
                    adj_bits[EDGE_PAIRS.index((node_of[a], node_of[b]))] = 1
                pos += 1
        op_vals = [0] * (N_NODES - 2)
        for interior, tok in enumerate(ops, start=1):
            op_vals[interior - 1] = OPS.index(tok)
        return tuple(adj_bits) + tuple(op_vals)


def bits_to_nodes(bits: str) -> range:
    """Node range for a pruned adjacency bit string; len(bits) = k(k-1)/2."""
    for k in range(2, N_NODES + 1):
        if k * (k - 1) // 2 == len(bits):
            return range(k)
    raise PhenotypeParseError(
        f"adj: {len(bits)} bits is not a triangular count for 2..{N_NODES} nodes"
    )


def _parse(phenotype: str) -> tuple[str, list[str]]:
    if not phenotype.startswith("adj=") or ";ops=" not in phenotype:
        raise PhenotypeParseError("expected 'adj=<bits>;ops=<tokens>'")
    adj_part, ops_part = phenotype[4:].split(";ops=", 1)
    if not adj_part or any(c not in "01" for c in adj_part):
        raise PhenotypeParseError("adj: bits must be 0 or 1")
    k = len(bits_to_nodes(adj_part))
    ops = ops_part.split(",") if ops_part else []
    if len(ops) != k - 2:
        raise PhenotypeParseError(
            f"ops: expected {k - 2} tokens for {k} nodes, got {len(ops)}"
        )
    for i, tok in enumerate(ops):
        if tok not in OPS:
            raise PhenotypeParseError(f"ops: position {i}: unknown op {tok!r}")
    return adj_part, ops
