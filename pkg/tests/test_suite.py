import numpy as np
import pytest

from naxbench.core import SchemaError
from naxbench.metrics import igd
from naxbench.suite import (
    SUITES,
    instantiate,
    make_instance,
    reference_point,
    registry_entry,
    suite_names,
    true_pareto_front,
)

from oracles import nondominated_bruteforce

# frozen registry: (space, objectives, properties, reference point)
MM, MANY, NOISY, BAD, DEG = (
    "multi_modal", "many_objective", "noisy", "badly_scaled", "degenerate_pf",
)

EXPECTED = {
    ("c10mop", 1): ("nb101", ["error", "params"], {MM, NOISY},
                    [0.1534, 3.2427e7]),
    ("c10mop", 2): ("nb101", ["error", "params", "flops"], {MM, NOISY, DEG},
                    [0.1577, 3.2427e7, 9.5450e9]),
    ("c10mop", 3): ("nats", ["error", "params", "flops"], {DEG},
                    [0.2021, 5.7995e5, 2.5706e8]),
    ("c10mop", 4): ("nats", ["error", "params", "flops", "latency@gpu"],
                    {MANY, DEG},
                    [0.2021, 5.7995e5, 2.5706e8, 2.0064e-2]),
    ("c10mop", 5): ("nb201",
                    ["error", "params", "flops", "latency@gpu", "energy@gpu"],
                    {MM, MANY, NOISY, DEG},
                    [0.9000, 1.0735e6, 1.5327e8, 6.8889e-3, 3.2651e-2]),
    ("c10mop", 6): ("nb201",
                    ["error", "params", "flops", "latency@eyeriss",
                     "energy@eyeriss", "arith_intensity@eyeriss"],
                    {MM, MANY, NOISY, DEG},
                    [0.5098, 1.0735e6, 1.5327e8, 1.0527e-2, 2.0139e-3, 26.596]),
    ("c10mop", 7): ("nb201",
                    ["error", "params", "flops", "latency@gpu", "energy@gpu",
                     "latency@eyeriss", "energy@eyeriss",
                     "arith_intensity@eyeriss"],
                    {MM, MANY, NOISY, DEG},
                    [0.9000, 1.0735e6, 1.5327e8, 8.1821e-3, 3.4711e-2,
                     1.0527e-2, 2.0139e-3, 27.078]),
    ("c10mop", 8): ("darts", ["error", "params"], {MM, NOISY, BAD},
                    [0.2750, 1.6724e6]),
    ("c10mop", 9): ("darts", ["error", "params", "flops"], {MM, NOISY, BAD},
                    [0.2750, 1.6724e6, 2.7034e8]),
    ("in1kmop", 1): ("resnet50", ["error", "params"], {MM, NOISY, BAD},
                     [0.3124, 4.4114e7]),
    ("in1kmop", 2): ("resnet50", ["error", "flops"], {MM, NOISY, BAD},
                     [0.3124, 1.4577e10]),
    ("in1kmop", 3): ("resnet50", ["error", "params", "flops"], {MM, NOISY, BAD},
                     [0.3124, 4.4114e7, 1.4577e10]),
    ("in1kmop", 4): ("transformer", ["error", "params"], {NOISY, BAD},
                     [0.1832, 7.4134e7]),
    ("in1kmop", 5): ("transformer", ["error", "flops"], {NOISY, BAD},
                     [0.1832, 1.5403e10]),
    ("in1kmop", 6): ("transformer", ["error", "params", "flops"], {NOISY, BAD},
                     [0.1832, 7.4134e7, 1.5403e10]),
    ("in1kmop", 7): ("mnv3", ["error", "params"], {MM, NOISY, BAD},
                     [0.2980, 1.0198e7]),
    ("in1kmop", 8): ("mnv3", ["error", "params", "flops"], {MM, NOISY, BAD},
                     [0.2980, 1.0198e7, 1.3768e9]),
    ("in1kmop", 9): ("mnv3", ["error", "params", "flops", "latency@note10"],
                     {MM, MANY, NOISY, BAD},
                     [0.2980, 1.0198e7, 1.3768e9, 7.0386e-2]),
}


def test_suite_names_and_sizes():
    assert suite_names() == ("c10mop", "in1kmop")
    assert all(len(SUITES[s]) == 9 for s in suite_names())


def test_registry_matches_frozen_table():
    for (suite, index), (space, objs, props, ref) in EXPECTED.items():
        e = registry_entry(suite, index)
        assert e.space == space, (suite, index)
        assert [d.name for d in e.objectives] == objs, (suite, index)
        assert set(e.properties) == props, (suite, index)
        assert list(e.reference_point) == ref, (suite, index)
        assert reference_point(suite, index) == tuple(ref)
        assert e.n_obj == len(objs)


def test_objective_descriptor_semantics():
    e = registry_entry("c10mop", 6)
    descs = {d.name: d for d in e.objectives}
    assert descs["error"].noisy and descs["error"].kind == "error"
    assert not descs["params"].noisy and descs["params"].kind == "complexity"
    ai = descs["arith_intensity@eyeriss"]
    assert ai.kind == "hardware" and ai.hardware_id == "eyeriss"
    assert ai.conventionally_maximized  # stored raw, flagged for consumers
    assert not descs["latency@eyeriss"].conventionally_maximized


def test_registry_bad_lookups():
    with pytest.raises(KeyError):
        registry_entry("c100mop", 1)
    with pytest.raises(IndexError):
        registry_entry("c10mop", 0)
    with pytest.raises(IndexError):
        registry_entry("in1kmop", 10)


def test_instantiate_every_problem(data_root):
    for suite, index in EXPECTED:
        inst = instantiate(suite, index, data_root)
        assert inst.name == registry_entry(suite, index).name
        assert inst.objective_dim == len(EXPECTED[(suite, index)][1])
        assert len(inst.reference_point) == inst.objective_dim
        space = EXPECTED[(suite, index)][0]
        exhaustive = space in ("nb201", "nats")  # nb101 ships a sampled subset
        assert inst.pf_available == exhaustive
        assert inst.normalized == exhaustive


def test_instance_reference_point_is_nadir_of_true_front(data_root):
    inst = instantiate("c10mop", 3, data_root)
    pf = true_pareto_front(inst)
    assert np.allclose(np.asarray(inst.reference_point), pf.max(axis=0))


def test_surrogate_reference_point_from_stored_worst(data_root):
    from naxbench.store import load_ensemble, load_lut

    inst = instantiate("in1kmop", 9, data_root)
    ens = load_ensemble(data_root / "mnv3" / "ensemble.mdl")
    lut = load_lut(data_root / "mnv3" / "lut.tbl")
    expect = [ens.worst["error"], lut.worst["params"], lut.worst["flops"],
              lut.worst["latency@note10"]]
    assert list(inst.reference_point) == expect


def test_true_front_matches_bruteforce_oracle(data_root):
    inst = instantiate("c10mop", 5, data_root)
    db = inst.evaluators.tabular
    names = [d.name for d in inst.objectives]
    F = np.array([
        [float(np.mean(r.fe_reps))] + [r.metric(n) for n in names[1:]]
        for r in db.records.values()
    ])
    pf = true_pareto_front(inst)
    # front points are catalog rows
    rows = {tuple(r) for r in F}
    assert all(tuple(p) in rows for p in pf)
    # soundness: no catalog row dominates a front row
    for p in pf:
        dominated = np.all(F <= p, axis=1) & np.any(F < p, axis=1)
        assert not dominated.any()
    # completeness: every catalog row is weakly dominated by some front row
    covered = np.zeros(len(F), dtype=bool)
    for p in pf:
        covered |= np.all(p <= F, axis=1)
    assert covered.all()
    # brute-force membership agreement on a subsample
    from naxbench.metrics import nondominated_mask

    rng = np.random.default_rng(0)
    sub = np.vstack([pf, F[rng.choice(len(F), 1500, replace=False)]])
    assert np.array_equal(nondominated_mask(sub), nondominated_bruteforce(sub))


def test_true_front_cached(data_root):
    inst = instantiate("c10mop", 4, data_root)
    assert true_pareto_front(inst) is true_pareto_front(inst)


def test_true_front_unavailable_for_surrogates(data_root):
    inst = instantiate("in1kmop", 1, data_root)
    assert not inst.pf_available
    with pytest.raises(ValueError):
        true_pareto_front(inst)


def test_igd_zero_against_own_front(data_root):
    inst = instantiate("c10mop", 3, data_root)
    pf = true_pareto_front(inst)
    assert igd(pf, pf) == 0.0


def test_missing_data_and_schema_mismatch(tmp_path, data_root):
    with pytest.raises(FileNotFoundError):
        instantiate("c10mop", 1, tmp_path)
    # a catalog for the wrong space under nb201/
    import shutil

    bad = tmp_path / "nb201"
    bad.mkdir(parents=True)
    shutil.copy(data_root / "nats" / "tabular.ndj", bad / "tabular.ndj")
    with pytest.raises(SchemaError):
        instantiate("c10mop", 5, tmp_path)


def test_make_instance_rejects_error_less_selection(data_root):
    with pytest.raises(ValueError):
        make_instance("nb201", ("params", "flops"), data_root)


def test_data_root_env_used(monkeypatch, data_root):
    monkeypatch.setenv("NAXBENCH_DATA", str(data_root))
    inst = instantiate("c10mop", 5)
    assert inst.name == "C-10/MOP5"
