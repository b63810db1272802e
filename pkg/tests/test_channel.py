"""Channel model: path loss, unit conversion, and fading-state sampling."""

import numpy as np
import pytest
from scipy import stats

from semsec import ChannelConfig, path_loss_linear, dbm_to_watt, sample_states
from semsec.channel import gain_arrays


def test_path_loss_reference_distance():
    assert path_loss_linear(1.0, -30.0, 4.0) == pytest.approx(1.0e-3, rel=1e-12)


def test_path_loss_at_30m():
    # 10^-3 * 30^-4
    assert path_loss_linear(30.0, -30.0, 4.0) == pytest.approx(
        1.2345679012345679e-09, rel=1e-12
    )


def test_path_loss_identity_case():
    assert path_loss_linear(1.0, 0.0, 4.0) == 1.0


def test_path_loss_rejects_nonpositive_distance():
    with pytest.raises(ValueError):
        path_loss_linear(0.0, -30.0, 4.0)
    with pytest.raises(ValueError):
        path_loss_linear(-2.0, -30.0, 4.0)


def test_dbm_to_watt_reference_points():
    assert dbm_to_watt(30.0) == pytest.approx(1.0, rel=1e-12)
    assert dbm_to_watt(0.0) == pytest.approx(1.0e-3, rel=1e-12)
    assert dbm_to_watt(-80.0) == pytest.approx(1.0e-11, rel=1e-12)


def test_config_defaults_give_expected_mean_gain():
    cfg = ChannelConfig()
    assert cfg.noise_l_w == pytest.approx(1.0e-11, rel=1e-12)
    assert cfg.mean_gain_l == pytest.approx(123.45679012345679, rel=1e-12)
    assert cfg.mean_gain_e == pytest.approx(cfg.mean_gain_l, rel=1e-12)


def test_config_rejects_bad_fields():
    with pytest.raises(ValueError):
        ChannelConfig(d_l=0.0)
    with pytest.raises(ValueError):
        ChannelConfig(alpha=-1.0)
    with pytest.raises(ValueError):
        ChannelConfig(seed=-1)


def test_sampling_is_deterministic():
    cfg = ChannelConfig(seed=7)
    a = sample_states(cfg, 64)
    b = sample_states(cfg, 64)
    assert [(s.g_l, s.g_e) for s in a] == [(s.g_l, s.g_e) for s in b]


def test_sampling_prefix_stable_under_longer_draws():
    # per-state substreams: the first k states do not depend on n
    cfg = ChannelConfig(seed=3)
    short = sample_states(cfg, 16)
    long = sample_states(cfg, 64)
    assert [(s.g_l, s.g_e) for s in short] == [(s.g_l, s.g_e) for s in long[:16]]


def test_sampling_rejects_zero_states():
    with pytest.raises(ValueError):
        sample_states(ChannelConfig(), 0)


def test_single_state_is_finite_and_nonnegative():
    (s,) = sample_states(ChannelConfig(seed=11), 1)
    assert np.isfinite(s.g_l) and np.isfinite(s.g_e)
    assert s.g_l >= 0.0 and s.g_e >= 0.0


def test_empirical_mean_matches_path_loss_over_noise():
    cfg = ChannelConfig(seed=0)
    g_l, g_e = gain_arrays(sample_states(cfg, 100_000))
    assert abs(g_l.mean() - cfg.mean_gain_l) / cfg.mean_gain_l < 0.02
    assert abs(g_e.mean() - cfg.mean_gain_e) / cfg.mean_gain_e < 0.02


def test_gains_pass_ks_test_against_exponential():
    cfg = ChannelConfig(seed=5)
    g_l, _ = gain_arrays(sample_states(cfg, 10_000))
    res = stats.kstest(g_l, "expon", args=(0.0, cfg.mean_gain_l))
    assert res.pvalue > 0.01


def test_distinct_seeds_decorrelate():
    a, _ = gain_arrays(sample_states(ChannelConfig(seed=1), 4096))
    b, _ = gain_arrays(sample_states(ChannelConfig(seed=2), 4096))
    assert abs(np.corrcoef(a, b)[0, 1]) < 0.05


def test_legitimate_and_eve_gains_independent():
    g_l, g_e = gain_arrays(sample_states(ChannelConfig(seed=9), 4096))
    assert abs(np.corrcoef(g_l, g_e)[0, 1]) < 0.05
