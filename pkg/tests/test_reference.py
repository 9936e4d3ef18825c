import math

import numpy as np
import pytest

from thermomi import (
    ConfigError,
    OracleConfig,
    closed_form_mi,
    log_cosh,
    make_discrete,
    make_gaussian,
    mc_incremental_mi_rate,
    mc_mmse,
    mc_mutual_information,
    mi_bernoulli_closed,
    mi_gaussian_closed,
    mmse,
)

LN2 = math.log(2.0)


def test_gaussian_closed_form_values():
    assert mi_gaussian_closed(0.0) == 0.0
    assert mi_gaussian_closed(math.e - 1.0) == pytest.approx(0.5, abs=1e-15)
    assert mi_gaussian_closed(1.0) == pytest.approx(0.5 * LN2, abs=1e-15)


def test_bernoulli_closed_form_limits(cfg):
    assert mi_bernoulli_closed(0.0, cfg) == 0.0
    # low snr: I = beta/2 + O(beta^2)
    assert mi_bernoulli_closed(0.01, cfg) == pytest.approx(0.005, abs=5e-5)
    # high snr: the one-bit input saturates at log 2
    sat = mi_bernoulli_closed(25.0, cfg)
    assert sat < LN2
    assert LN2 - sat < 1e-3


def test_bernoulli_closed_form_frozen_value(cfg):
    assert mi_bernoulli_closed(1.0, cfg) == pytest.approx(0.3368308203, abs=1e-9)


def test_log_cosh_safe_and_accurate():
    assert float(log_cosh(1000.0)) == pytest.approx(1000.0 - LN2, abs=1e-12)
    assert float(log_cosh(-1000.0)) == pytest.approx(1000.0 - LN2, abs=1e-12)
    for u in (0.0, 0.3, -2.0):
        assert float(log_cosh(u)) == pytest.approx(math.log(math.cosh(u)), abs=1e-14)
    out = log_cosh(np.asarray([0.5, -0.5]))
    assert out.shape == (2,)
    assert out[0] == pytest.approx(out[1], abs=0)


def test_closed_form_dispatch(bernoulli, bernoulli_tilted, gauss_shifted, cfg):
    assert closed_form_mi(bernoulli, 1.0, cfg) == pytest.approx(mi_bernoulli_closed(1.0, cfg))
    assert closed_form_mi(gauss_shifted, 1.0, cfg) == pytest.approx(0.5 * math.log1p(2.0))
    assert closed_form_mi(bernoulli_tilted, 1.0, cfg) is None
    three = make_discrete([(-1.0, 1 / 3), (0.0, 1 / 3), (1.0, 1 / 3)])
    assert closed_form_mi(three, 1.0, cfg) is None


def test_oracle_config_validation():
    with pytest.raises(ConfigError, match="mc_samples"):
        OracleConfig(mc_samples=10)
    with pytest.raises(ConfigError, match="rng_seed"):
        OracleConfig(rng_seed=-1)
    with pytest.raises(ConfigError, match="hermite_nodes"):
        OracleConfig(hermite_nodes=2)


def test_mc_mi_brackets_closed_forms(bernoulli, gauss_std, cfg):
    oracle = OracleConfig(mc_samples=1_000_000)
    for dist, closed in (
        (bernoulli, lambda b: mi_bernoulli_closed(b, cfg)),
        (gauss_std, mi_gaussian_closed),
    ):
        for beta in (0.5, 2.0):
            est = mc_mutual_information(dist, beta, oracle)
            assert est.samples == 1_000_000
            assert est.stderr > 0.0
            assert abs(est.value - closed(beta)) < 3.0 * est.stderr


def test_mc_mi_reproducible(bernoulli):
    oracle = OracleConfig(mc_samples=200_000, rng_seed=11)
    a = mc_mutual_information(bernoulli, 1.0, oracle)
    b = mc_mutual_information(bernoulli, 1.0, oracle)
    assert (a.value, a.stderr) == (b.value, b.stderr)
    c = mc_mutual_information(bernoulli, 1.0, OracleConfig(mc_samples=200_000, rng_seed=12))
    assert c.value != a.value


def test_mc_stderr_scales_with_samples(gauss_std):
    small = mc_mutual_information(gauss_std, 1.0, OracleConfig(mc_samples=250_000, rng_seed=5))
    big = mc_mutual_information(gauss_std, 1.0, OracleConfig(mc_samples=1_000_000, rng_seed=5))
    ratio = small.stderr / big.stderr
    assert 1.6 < ratio < 2.4


def test_mc_mmse_brackets_quadrature(bernoulli, cfg):
    est = mc_mmse(bernoulli, 1.0, OracleConfig(mc_samples=1_000_000))
    want = mmse(bernoulli, 1.0, cfg)
    assert abs(est.value - want) < 3.0 * est.stderr


def test_incremental_channel_rate_matches_half_mmse(bernoulli, cfg):
    # an extra observation worth delta of snr buys delta * mmse / 2 nats;
    # the estimator has O(delta) bias, hence the relative allowance
    est = mc_incremental_mi_rate(bernoulli, 1.0, 1e-3, OracleConfig(mc_samples=2_000_000, rng_seed=77))
    want = 0.5 * mmse(bernoulli, 1.0, cfg)
    assert abs(est.value - want) < max(3.0 * est.stderr, 0.05 * want)


def test_incremental_rate_rejects_bad_delta(bernoulli):
    with pytest.raises(ValueError):
        mc_incremental_mi_rate(bernoulli, 1.0, 0.5, OracleConfig(mc_samples=200_000))
    with pytest.raises(ValueError):
        mc_incremental_mi_rate(make_gaussian(0.0, 1.0), 1.0, 1e-3, OracleConfig(mc_samples=200_000))
