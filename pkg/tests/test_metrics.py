import numpy as np
import pytest
from scipy import stats

from naxbench.core import DimensionError
from naxbench.metrics import (
    filter_nondominated,
    hypervolume,
    igd,
    kendall_tau,
    mae,
    nondominated_mask,
    wilcoxon_rank_sum,
)

from oracles import (
    hv_inclusion_exclusion,
    hv_monte_carlo,
    igd_double_loop,
    kendall_tau_pairs,
    nondominated_bruteforce,
    rank_sum_exact_p,
)


def test_nondominated_mask_matches_bruteforce():
    rng = np.random.default_rng(11)
    for m in (2, 3, 5):
        for _ in range(20):
            F = rng.random((40, m))
            # duplicates and dominated copies included on purpose
            F = np.vstack([F, F[:5], F[:5] + 0.1])
            assert np.array_equal(nondominated_mask(F), nondominated_bruteforce(F))


def test_filter_nondominated_unique_sorted():
    F = np.array([[1.0, 2.0], [1.0, 2.0], [2.0, 1.0], [3.0, 3.0]])
    out = filter_nondominated(F)
    assert out.tolist() == [[1.0, 2.0], [2.0, 1.0]]


def test_hv_2d_staircase_by_hand():
    F = [(1.0, 3.0), (2.0, 2.0), (3.0, 1.0)]
    assert hypervolume(F, (4.0, 4.0)) == pytest.approx(6.0, abs=1e-15)


def test_hv_single_point_box():
    assert hypervolume([[1.0, 1.0, 1.0]], [3.0, 2.0, 4.0]) == pytest.approx(2 * 1 * 3)


def test_hv_empty_and_clipped():
    assert hypervolume(np.empty((0, 2)), [1.0, 1.0]) == 0.0
    # at or beyond the reference: no volume
    assert hypervolume([[1.0, 1.0], [0.5, 2.0]], [1.0, 1.0]) == 0.0


def test_hv_matches_inclusion_exclusion():
    rng = np.random.default_rng(5)
    for m in (1, 2, 3):
        for n in (1, 2, 5, 10):
            for _ in range(10):
                F = rng.random((n, m)) * 2.0
                ref = F.max(axis=0) + rng.random(m)
                exact = hypervolume(F, ref)
                oracle = hv_inclusion_exclusion(F, ref)
                assert abs(exact - oracle) <= 1e-12 * max(1.0, oracle)


def test_hv_matches_monte_carlo_mid_dims():
    rng = np.random.default_rng(9)
    for m in (4, 5):
        F = rng.random((20, m))
        ref = np.ones(m) * 1.1
        exact = hypervolume(F, ref)
        est, se = hv_monte_carlo(F, ref, 200_000, seed=m)
        assert abs(exact - est) <= 3.0 * se + 1e-12


def test_hv_axis_permutation_invariance():
    rng = np.random.default_rng(3)
    F = rng.random((15, 4))
    ref = np.full(4, 1.2)
    base = hypervolume(F, ref)
    for _ in range(5):
        perm = rng.permutation(4)
        assert hypervolume(F[:, perm], ref[perm]) == pytest.approx(base, rel=1e-12)


def test_hv_dominated_point_no_effect():
    rng = np.random.default_rng(4)
    F = rng.random((10, 3))
    ref = np.full(3, 1.5)
    with_dup = np.vstack([F, F[0] + 0.05])
    assert hypervolume(with_dup, ref) == pytest.approx(hypervolume(F, ref), rel=1e-12)


def test_hv_rejects_bad_shapes():
    with pytest.raises(DimensionError):
        hypervolume([[1.0, 2.0]], [1.0, 2.0, 3.0])
    with pytest.raises(DimensionError):
        hypervolume([1.0, 2.0], [1.0, 2.0])


def test_igd_matches_double_loop():
    rng = np.random.default_rng(2)
    for _ in range(10):
        front = rng.random((12, 3))
        pf = rng.random((30, 3))
        assert igd(front, pf) == pytest.approx(igd_double_loop(front, pf), rel=1e-12)


def test_igd_identity_and_empty():
    pf = np.random.default_rng(0).random((20, 2))
    assert igd(pf, pf) == 0.0
    assert igd(np.empty((0, 2)), pf) == np.inf
    with pytest.raises(ValueError):
        igd(pf, np.empty((0, 2)))


def test_kendall_tau_known_and_oracle():
    assert kendall_tau([1, 2, 3, 4], [10, 20, 30, 40]) == pytest.approx(1.0)
    assert kendall_tau([1, 2, 3, 4], [4, 3, 2, 1]) == pytest.approx(-1.0)
    rng = np.random.default_rng(8)
    for _ in range(20):
        a = rng.integers(0, 6, size=25).astype(float)  # ties likely
        b = rng.integers(0, 6, size=25).astype(float)
        assert kendall_tau(a, b) == pytest.approx(kendall_tau_pairs(a, b), abs=1e-12)


def test_mae():
    assert mae([1.0, 2.0, 3.0], [2.0, 2.0, 5.0]) == pytest.approx(1.0)
    with pytest.raises(DimensionError):
        mae([1.0], [1.0, 2.0])


def test_wilcoxon_matches_scipy_p():
    # same tie-corrected normal approximation as mannwhitneyu(asymptotic)
    rng = np.random.default_rng(6)
    for _ in range(30):
        a = np.round(rng.random(12), 1)
        b = np.round(rng.random(15) + rng.uniform(-0.3, 0.3), 1)
        res = stats.mannwhitneyu(a, b, alternative="two-sided",
                                 method="asymptotic", use_continuity=False)
        p = res.pvalue
        decision = wilcoxon_rank_sum(a, b, alpha=0.05)
        if p >= 0.05:
            assert decision == "similar"
        else:
            assert decision in ("better", "worse")
            med = np.median(a) - np.median(b)
            if med != 0:
                assert decision == ("better" if med > 0 else "worse")


def test_wilcoxon_against_exact_enumeration():
    rng = np.random.default_rng(13)
    for _ in range(10):
        # fully separated: exact two-sided p is its minimum, 2/C(10,5)
        a = rng.uniform(100.0, 200.0, size=5)
        b = rng.uniform(0.0, 1.0, size=5)
        p_exact = rank_sum_exact_p(list(a), list(b))
        assert p_exact == pytest.approx(2 / 252)
        assert wilcoxon_rank_sum(a, b, alpha=0.05) == "better"
        assert wilcoxon_rank_sum(b, a, alpha=0.05) == "worse"
    # interleaved: no evidence either way
    a = np.arange(0.0, 20.0, 2.0)
    b = np.arange(1.0, 21.0, 2.0)
    assert rank_sum_exact_p(list(a), list(b)) > 0.5
    assert wilcoxon_rank_sum(a, b) == "similar"


def test_wilcoxon_degenerate():
    assert wilcoxon_rank_sum([1.0, 1.0, 1.0], [1.0, 1.0, 1.0]) == "similar"
    assert wilcoxon_rank_sum([9.0] * 8, [1.0] * 8) == "better"
    with pytest.raises(ValueError):
        wilcoxon_rank_sum([1.0], [2.0, 3.0])
