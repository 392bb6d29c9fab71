"""Rank correlation and mode histograms, cross-checked against scipy."""

import numpy as np
import pytest
import scipy.stats

from dcdt import mode_histogram, random_block_costs, spearman
from dcdt.analysis import (
    histogram_from_entries,
    load_block_costs_csv,
    save_block_costs_csv,
)


def test_monotone_examples():
    assert spearman([1, 2, 3], [10, 20, 30]) == pytest.approx(1.0, abs=1e-15)
    assert spearman([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0, abs=1e-15)


def test_partial_agreement_example():
    # rank formula 1 - 6*sum(d^2)/(n(n^2-1)) with sum(d^2) = 2, n = 4
    assert spearman([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(0.8, abs=1e-15)


def test_self_correlation_and_symmetry():
    rng = np.random.default_rng(50)
    x = rng.uniform(0, 1, 100)
    y = rng.uniform(0, 1, 100)
    assert spearman(x, x) == 1.0
    assert spearman(x, y) == spearman(y, x)


def test_invariance_under_monotone_transform():
    rng = np.random.default_rng(51)
    x = rng.uniform(0, 5, 200)
    y = rng.uniform(0, 5, 200)
    base = spearman(x, y)
    assert spearman(np.exp(x), y) == base
    assert spearman(x, y**3 + 7) == base


def test_ties_match_scipy_average_ranks():
    rng = np.random.default_rng(52)
    for _ in range(20):
        x = rng.integers(0, 8, 60).astype(float)  # heavy ties
        y = rng.integers(0, 8, 60).astype(float)
        if len(set(x)) < 2 or len(set(y)) < 2:
            continue
        ref = scipy.stats.spearmanr(x, y).statistic
        assert spearman(x, y) == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_error_conditions():
    with pytest.raises(ValueError):
        spearman([1, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        spearman([1], [2])
    with pytest.raises(ValueError):
        spearman([5, 5, 5], [1, 2, 3])


def test_random_block_costs_reproducible_and_in_range():
    a = random_block_costs(5, seed=1)
    b = random_block_costs(5, seed=1)
    assert np.array_equal(a.values, b.values)
    assert len(a.values) == 5
    big = random_block_costs(100000, seed=2).values
    assert big.min() > 0.0 and big.max() <= 1.0
    with pytest.raises(ValueError):
        random_block_costs(0, seed=1)


def test_mode_histogram_basics():
    zero = mode_histogram(np.zeros((3, 3, 8, 8), dtype=np.int32))
    assert zero.total == 0
    assert np.all(zero.counts == 0)
    assert np.all(zero.percentages == 0.0)

    m = np.zeros((2, 2, 8, 8), dtype=np.int32)
    m[1, 0, 0, 0] = 1
    h = mode_histogram(m)
    assert h.total == 1
    assert h.percentages[0, 0] == 100.0


def test_mode_histogram_against_recount_oracle():
    rng = np.random.default_rng(53)
    m = rng.choice([-1, 0, 0, 0, 1], size=(6, 7, 8, 8)).astype(np.int32)
    h = mode_histogram(m)
    tally = {}
    for bm in range(6):
        for bn in range(7):
            for a in range(8):
                for b in range(8):
                    if m[bm, bn, a, b] != 0:
                        tally[(a, b)] = tally.get((a, b), 0) + 1
    for (a, b), cnt in tally.items():
        assert h.counts[a, b] == cnt
    assert h.total == sum(tally.values())
    assert h.percentages.sum() == pytest.approx(100.0, abs=1e-9)


def test_histogram_from_sparse_entries_matches_dense():
    rng = np.random.default_rng(54)
    m = rng.choice([-1, 0, 0, 1], size=(4, 4, 8, 8)).astype(np.int32)
    entries = [
        (bm, bn, a, b, int(m[bm, bn, a, b]))
        for bm, bn, a, b in np.argwhere(m != 0)
    ]
    dense = mode_histogram(m)
    sparse = histogram_from_entries(entries)
    assert np.array_equal(dense.counts, sparse.counts)


def test_block_costs_csv_roundtrip(tmp_path):
    vec = random_block_costs(17, seed=3)
    path = tmp_path / "costs.csv"
    save_block_costs_csv(vec, path)
    back = load_block_costs_csv(path)
    assert np.array_equal(back.values, vec.values)
