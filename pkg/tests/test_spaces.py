import itertools

import numpy as np
import pytest

from naxbench.core import (
    DimensionError,
    PhenotypeParseError,
    UnsupportedSpaceError,
    clamp_genotype,
)
from naxbench.spaces import SPACE_NAMES, get_space
from naxbench.spaces.nb101 import EDGE_PAIRS, N_NODES


def all_spaces():
    return [get_space(n) for n in SPACE_NAMES]


def test_registry_names():
    assert SPACE_NAMES == (
        "nb101", "nb201", "nats", "darts", "resnet50", "transformer", "mnv3"
    )
    with pytest.raises(UnsupportedSpaceError):
        get_space("resnet51")


def test_descriptor_consistency():
    for sp in all_spaces():
        d = sp.descriptor
        assert d.dimension == len(d.cardinalities)
        assert all(c >= 2 for c in d.cardinalities)
        prod = 1
        for c in d.cardinalities:
            prod *= c
        assert 0 < d.size <= prod


def test_round_trip_sampled():
    rng = np.random.default_rng(1)
    for sp in all_spaces():
        for x in sp.sample(rng, 300):
            assert sp.is_valid(x)
            ph = sp.decode(x)
            y = sp.encode(ph)
            assert sp.is_valid(y)
            assert sp.decode(y) == ph  # decode∘encode∘decode fixpoint


def test_bijective_spaces_round_trip_exactly():
    rng = np.random.default_rng(2)
    for name in ("nb201", "nats", "darts"):
        sp = get_space(name)
        for x in sp.sample(rng, 200):
            assert sp.encode(sp.decode(x)) == x


def test_enumerate_counts():
    assert sum(1 for _ in get_space("nb201").enumerate_genotypes()) == 15_625
    assert sum(1 for _ in get_space("nats").enumerate_genotypes()) == 32_768


def test_enumerate_valid_and_ordered():
    sp = get_space("nb201")
    first = list(itertools.islice(sp.enumerate_genotypes(), 7))
    assert first[0] == (0,) * 6
    assert first == sorted(first)
    with pytest.raises(UnsupportedSpaceError):
        get_space("darts").enumerate_genotypes()


def test_clamp_examples():
    cards = (5,) * 6
    assert clamp_genotype((9, -1, 2, 3, 4, 12), cards) == (4, 4, 2, 3, 4, 2)
    with pytest.raises(DimensionError):
        clamp_genotype((1, 2), cards)


# -- nb101 ----------------------------------------------------------------


def _reachable(adj, frm, n):
    seen = {frm}
    frontier = [frm]
    while frontier:
        u = frontier.pop()
        for v in range(n):
            if adj[u][v] and v not in seen:
                seen.add(v)
                frontier.append(v)
    return seen


def nb101_valid_oracle(x):
    """Independent validity check straight from the written rules."""
    adj = [[0] * N_NODES for _ in range(N_NODES)]
    for bit, (i, j) in zip(x, EDGE_PAIRS):
        adj[i][j] = int(bit)
    fwd = _reachable(adj, 0, N_NODES)
    if 6 not in fwd:
        return False
    radj = [[adj[j][i] for j in range(N_NODES)] for i in range(N_NODES)]
    bwd = _reachable(radj, 6, N_NODES)
    keep = fwd & bwd
    edges = sum(
        1 for (i, j), bit in zip(EDGE_PAIRS, x) if bit and i in keep and j in keep
    )
    return edges <= 9


def test_nb101_validity_against_oracle():
    sp = get_space("nb101")
    rng = np.random.default_rng(3)
    agree = 0
    for _ in range(3000):
        x = tuple(int(v) for v in rng.integers(0, sp.cardinalities))
        assert sp.is_valid(x) == nb101_valid_oracle(x)
        agree += 1
    assert agree == 3000


def test_nb101_known_cells():
    sp = get_space("nb101")
    # linear chain input -> 1 -> output, all other bits off
    x = [0] * 26
    x[EDGE_PAIRS.index((0, 1))] = 1
    x[EDGE_PAIRS.index((1, 6))] = 1
    x = tuple(x)
    assert sp.is_valid(x)
    ph = sp.decode(x)
    # pruned to nodes {0,1,6} -> 3-node triangle bits (0,1),(0,2),(1,2)
    assert ph == "adj=101;ops=conv3x3"
    assert sp.decode(sp.encode(ph)) == ph
    # no path at all
    assert not sp.is_valid((0,) * 26)


def test_nb101_pruned_dont_cares_collapse():
    sp = get_space("nb101")
    x = [0] * 26
    x[EDGE_PAIRS.index((0, 1))] = 1
    x[EDGE_PAIRS.index((1, 6))] = 1
    y = list(x)
    y[EDGE_PAIRS.index((2, 3))] = 1  # dangling edge, pruned away
    y[21 + 2] = 2  # op of a pruned node
    assert sp.decode(tuple(x)) == sp.decode(tuple(y))


def test_nb101_distinct_count_matches_catalog():
    assert get_space("nb101").descriptor.size == 423_624


def test_nb101_parse_errors():
    sp = get_space("nb101")
    for bad in ("", "ops=conv3x3", "adj=11;ops=conv3x3", "adj=110;ops=warp"):
        with pytest.raises(PhenotypeParseError):
            sp.encode(bad)


# -- nb201 / nats ----------------------------------------------------------


def test_nb201_example_string():
    sp = get_space("nb201")
    x = (1, 1, 3, 4, 0, 0)
    assert sp.decode(x) == "|skip~0|+|skip~0|3x3~1|+|avg~0|none~1|none~2|"
    assert sp.encode(sp.decode(x)) == x
    assert sp.is_valid(x)


def test_nb201_all_genotypes_valid():
    sp = get_space("nb201")
    rng = np.random.default_rng(4)
    for _ in range(500):
        x = tuple(int(v) for v in rng.integers(0, 5, size=6))
        assert sp.is_valid(x)


def test_nats_channel_table():
    sp = get_space("nats")
    assert sp.decode((0, 1, 2, 3, 4)) == "8:16:24:32:40"
    assert sp.encode("64:64:64:64:64") == (7, 7, 7, 7, 7)
    with pytest.raises(PhenotypeParseError):
        sp.encode("12:16:24:32:40")  # 12 is not in the table


# -- darts -----------------------------------------------------------------


def test_darts_size_is_count_of_genotypes():
    sp = get_space("darts")
    prod = 1
    for c in sp.cardinalities:
        prod *= c
    assert sp.descriptor.size == prod  # bijective coding


def test_darts_input_bounds_grow_with_node():
    cards = get_space("darts").cardinalities
    # nodes own (input, op) pairs; input cardinality is node index + 2
    per_cell = cards[:16]
    assert per_cell[0::4] == (2, 3, 4, 5)
    assert set(per_cell[1::4]) == {8}


def test_darts_lut_keys_count():
    sp = get_space("darts")
    rng = np.random.default_rng(5)
    x = sp.sample(rng, 1)[0]
    keys = sp.lut_keys(sp.decode(x))
    assert len(keys) == 16  # 2 ops per node, 4 nodes, 2 cells
    assert all(k.split(":")[0] in ("normal", "reduce") for k in keys)
    assert set(keys) <= set(sp.all_lut_keys())


# -- macro spaces ----------------------------------------------------------


def test_resnet50_inert_slots_are_dont_cares():
    sp = get_space("resnet50")
    x = list(sp.sample(np.random.default_rng(6), 1)[0])
    x[0] = 0  # depth 2 for stage 0: slots 2,3 of stage 0 inert
    a = tuple(x)
    x[5 + 2] = (x[5 + 2] + 1) % 5
    x[5 + 3] = (x[5 + 3] + 3) % 5
    b = tuple(x)
    assert sp.decode(a) == sp.decode(b)
    # canonical form writes inert slots back as zero
    assert sp.encode(sp.decode(a))[5 + 2] == 0


def test_transformer_depth_prefix():
    sp = get_space("transformer")
    x = [0] * 34
    x[0] = 1  # width 384
    x[1] = 0  # depth 12 of 16 slots
    ph = sp.decode(tuple(x))
    assert ph.startswith("e384;")
    assert ph.count(",") == 11  # 12 active layers
    keys = sp.lut_keys(ph)
    assert keys.count("e384:stem") == 1
    assert len(keys) == 13


def test_mnv3_validity_rules():
    sp = get_space("mnv3")
    base = [0] * 21
    base[0] = 2
    for s in range(5):
        base[1 + 4 * s + 0] = 1
        base[1 + 4 * s + 1] = 5
    x = tuple(base)
    assert sp.is_valid(x)  # two active blocks per stage, skips at tail
    y = list(base)
    y[1 + 0] = 0  # stage 0: skip before an active block
    assert not sp.is_valid(tuple(y))
    z = list(base)
    z[1 + 1] = 0  # stage 0: only one active block
    assert not sp.is_valid(tuple(z))


def test_mnv3_phenotype_tokens():
    sp = get_space("mnv3")
    base = [0] * 21
    base[0] = 2  # 192
    for s in range(5):
        base[1 + 4 * s + 0] = 1  # k3e3
        base[1 + 4 * s + 1] = 9  # k7e6
    ph = sp.decode(tuple(base))
    assert ph == "r192;" + ";".join(["k3e3,k7e6"] * 5)
    assert sp.decode(sp.encode(ph)) == ph


def test_sampling_dimension_checks():
    sp = get_space("nb201")
    with pytest.raises(DimensionError):
        sp.check((1, 2, 3))
    with pytest.raises(ValueError):
        sp.check((0, 0, 0, 0, 0, 9))
