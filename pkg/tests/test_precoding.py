import numpy as np
import pytest

from src.errors import RankDeficientError
from src.precoding import (
    RateReport, equal_power, power_allocation, projector_gain, sinr_rates, sum_rate,
    waterfill, zf_beamformer, zf_precoder,
)


def test_zf_nulls_interference(cgauss):
    H = cgauss(8, 4)
    pre = zf_precoder(H)
    np.testing.assert_allclose(H.conj().T @ pre.directions, np.eye(4), atol=1e-10)


def test_zf_gains_match_projector(cgauss):
    H = cgauss(6, 3)
    pre = zf_precoder(H)
    for k in range(3):
        assert pre.gains[k] == pytest.approx(projector_gain(H, k), rel=1e-9)


def test_zf_single_user_is_matched_filter(cgauss):
    h = cgauss(5, 1)
    pre = zf_precoder(h)
    assert pre.gains[0] == pytest.approx(float(np.vdot(h, h).real), rel=1e-12)


def test_zf_identity_channel():
    pre = zf_precoder(np.eye(3))
    np.testing.assert_allclose(pre.gains, np.ones(3))


def test_zf_rejects_rank_deficient(cgauss):
    h = cgauss(4, 1)
    H = np.hstack([h, 2 * h])
    with pytest.raises(RankDeficientError) as err:
        zf_precoder(H, subcarrier=3, users=[0, 5])
    assert err.value.subcarrier == 3
    assert err.value.users == (0, 5)
    assert "sub-carrier 3" in str(err.value)


def test_zf_rejects_too_many_users(cgauss):
    with pytest.raises(RankDeficientError):
        zf_precoder(cgauss(2, 3))


def test_equal_power():
    np.testing.assert_allclose(equal_power(4, 2.0), [0.5] * 4)


def test_waterfill_equal_gains_is_equal_power():
    np.testing.assert_allclose(waterfill([2.0, 2.0, 2.0], 3.0), [1.0, 1.0, 1.0])


def test_waterfill_shuts_off_weak_user():
    p = waterfill([10.0, 0.01], 1.0, 1.0)
    np.testing.assert_allclose(p, [1.0, 0.0])


def test_waterfill_known_levels():
    # floors 0.5 and 1: level (2 + 1.5) / 2 = 1.75
    np.testing.assert_allclose(waterfill([2.0, 1.0], 2.0), [1.25, 0.75])


def test_waterfill_budget_and_kkt(rng):
    for _ in range(50):
        g = rng.exponential(size=6)
        P = rng.uniform(0.1, 20)
        p = waterfill(g, P)
        assert p.sum() == pytest.approx(P, rel=1e-12)
        assert np.all(p >= 0)
        active = p > 0
        level = p[active] + 1.0 / g[active]
        np.testing.assert_allclose(level, level[0], rtol=1e-10)
        assert np.all(1.0 / g[~active] >= level[0] - 1e-12)


def test_waterfill_beats_equal_power(rng):
    g = rng.exponential(size=5)
    P = 3.0
    wf = np.sum(np.log2(1 + waterfill(g, P) * g))
    eq = np.sum(np.log2(1 + equal_power(5, P) * g))
    assert wf >= eq - 1e-12


def test_power_allocation_dispatch():
    np.testing.assert_allclose(power_allocation("equal", [1.0, 4.0], 2.0), [1.0, 1.0])
    with pytest.raises(ValueError):
        power_allocation("greedy", [1.0], 1.0)


def test_transmit_power_and_rates_agree(cgauss):
    H = cgauss(8, 4)
    pre, W, rate = zf_beamformer(H, "waterfill", 5.0, 0.5)
    assert np.sum(np.abs(W) ** 2) == pytest.approx(5.0, rel=1e-10)
    np.testing.assert_allclose(sinr_rates(H, W, 0.5), pre.rates(), rtol=1e-9)
    assert rate == pytest.approx(float(np.sum(pre.rates())))


def test_sinr_with_interference():
    H = np.eye(2)
    W = np.array([[1.0, 1.0], [0.0, 1.0]])
    # user 0 sees signal 1, interference 1; user 1 sees signal 1, no interference
    np.testing.assert_allclose(sinr_rates(H, W, 1.0), [np.log2(1.5), 1.0])


def test_sum_rate_normalizes_columns():
    H = np.eye(2)
    report = sum_rate(H, np.diag([3.0, 0.5]), [1.0, 3.0])
    np.testing.assert_allclose(report.rates[0], [1.0, 2.0])
    assert report.total == pytest.approx(3.0)


def test_rate_report_combine():
    a = RateReport(rates=[np.array([1.0, 2.0])])
    b = RateReport(rates=[np.array([0.5])])
    both = RateReport.combine([a, b])
    np.testing.assert_allclose(both.subcarrier_rates, [3.0, 0.5])
    assert both.total == pytest.approx(3.5)
