"""Cost transformation against a literal per-coefficient oracle, plus the
exponent parameter sources."""

import numpy as np
import pytest

from dcdt import dcdt_cost, linear_cost, p_for_qf, p_from_table
from dcdt.jpeg import standard_table
from test_dct import naive_impulse_change


def naive_dcdt(costs, quant_table, p):
    """Literal transcription: per block and mode, sum d^p * |s| over cells."""
    bh, bw = costs.shape[0] // 8, costs.shape[1] // 8
    rho = np.zeros((bh, bw, 8, 8))
    for m in range(bh):
        for n in range(bw):
            d = costs[8 * m : 8 * m + 8, 8 * n : 8 * n + 8]
            for a in range(8):
                for b in range(8):
                    s = naive_impulse_change(a, b, quant_table[a, b])
                    acc = 0.0
                    for i in range(8):
                        for j in range(8):
                            acc += d[i, j] ** p * abs(s[i, j])
                    rho[m, n, a, b] = acc
    return rho


def test_uniform_costs_dc_formula():
    qt = np.full((8, 8), 16)
    rho = dcdt_cost(np.ones((16, 16)), qt, p=0.7)
    assert np.allclose(rho[:, :, 0, 0], 128.0, rtol=1e-12)
    for q in (1, 5, 40):
        rho = dcdt_cost(np.ones((8, 8)), np.full((8, 8), q), p=2.0)
        assert abs(rho[0, 0, 0, 0] - 8.0 * q) < 1e-12 * 8 * q


def test_p1_is_bitwise_identical_to_linear_route():
    rng = np.random.default_rng(8)
    qt = standard_table(75)
    for _ in range(25):
        costs = rng.uniform(1e-4, 1e4, (16, 16))
        a = dcdt_cost(costs, qt, p=1.0)
        b = linear_cost(costs, qt)
        assert np.array_equal(a, b)
        assert a.tobytes() == b.tobytes()


def test_matches_naive_oracle():
    rng = np.random.default_rng(9)
    qt = standard_table(75)
    costs = rng.uniform(0.01, 10.0, (16, 16))
    ref = naive_dcdt(costs, qt, 0.7)
    mine = dcdt_cost(costs, qt, 0.7)
    assert np.abs((mine - ref) / ref).max() < 1e-9


def test_matches_naive_oracle_other_exponents():
    rng = np.random.default_rng(10)
    qt = standard_table(95)
    costs = rng.uniform(0.5, 3.0, (8, 16))
    for p in (0.3, 1.0, 1.5):
        ref = naive_dcdt(costs, qt, p)
        assert np.abs((dcdt_cost(costs, qt, p) - ref) / ref).max() < 1e-9


def test_scaling_property_and_rank_invariance():
    rng = np.random.default_rng(11)
    qt = standard_table(85)
    costs = rng.uniform(0.01, 100.0, (16, 16))
    p = 0.6
    base = dcdt_cost(costs, qt, p)
    for c in (2.0, 10.0, 0.125):
        scaled = dcdt_cost(c * costs, qt, p)
        assert np.allclose(scaled, (c**p) * base, rtol=1e-12)
        assert np.array_equal(
            np.argsort(scaled, axis=None), np.argsort(base, axis=None)
        )


def test_monotonicity_in_spatial_costs():
    rng = np.random.default_rng(12)
    qt = standard_table(75)
    costs = rng.uniform(0.1, 2.0, (8, 8))
    base = dcdt_cost(costs, qt, 0.8)
    bumped = costs.copy()
    bumped[3, 5] += 1.0
    assert np.all(dcdt_cost(bumped, qt, 0.8) >= base)


def test_reassociation_tolerance():
    rng = np.random.default_rng(13)
    qt = standard_table(75)
    costs = rng.uniform(0.5, 2.0, (8, 8))
    rho = dcdt_cost(costs, qt, 1.3)
    from dcdt.transform import mode_change_magnitudes

    w = mode_change_magnitudes(qt)
    dp = (costs**1.3).reshape(64)
    for a in range(8):
        for b in range(8):
            acc = 0.0
            for cell in range(64):
                acc += dp[cell] * w[8 * a + b, cell]
            assert abs(rho[0, 0, a, b] - acc) <= 1e-12 * acc


def test_shape_validation():
    qt = standard_table(75)
    with pytest.raises(ValueError):
        dcdt_cost(np.ones((12, 16)), qt, 1.0)
    with pytest.raises(ValueError):
        dcdt_cost(np.ones((16, 16)), qt, 0.0)
    with pytest.raises(ValueError):
        linear_cost(np.ones((9, 8)), qt)


def test_p_for_qf_rule():
    assert p_for_qf(75) == pytest.approx(0.48, abs=1e-12)
    assert p_for_qf(95) == pytest.approx(0.88, abs=1e-12)
    assert p_for_qf(85) == pytest.approx(0.68, abs=1e-12)
    with pytest.raises(ValueError):
        p_for_qf(74)
    with pytest.raises(ValueError):
        p_for_qf(96)


def test_p_from_table_cells():
    expected = {
        (75, "CC-JRM"): 0.7,
        (75, "GFR"): 0.7,
        (75, "SCA-GFR"): 0.5,
        (95, "CC-JRM"): 0.9,
        (95, "GFR"): 1.1,
        (95, "SCA-GFR"): 0.9,
        (80, "SCA-GFR"): 0.6,
        (85, "SCA-GFR"): 0.6,
        (90, "SCA-GFR"): 0.8,
    }
    for (qf, analyzer), p in expected.items():
        assert p_from_table(qf, analyzer) == p
    assert p_from_table(90, "sca-gfr") == 0.8  # case-insensitive
    with pytest.raises(KeyError):
        p_from_table(80, "GFR")
    with pytest.raises(ValueError):
        p_from_table(75, "SRNet")


def test_regression_vs_table_residual():
    residuals = [
        abs(p_for_qf(qf) - p_from_table(qf, "SCA-GFR")) for qf in (75, 80, 85, 90, 95)
    ]
    assert max(residuals) == pytest.approx(0.08, abs=1e-12)
