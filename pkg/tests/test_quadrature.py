import math

import numpy as np
import pytest

from thermomi import (
    ConfigError,
    NonFiniteIntegrand,
    QuadratureConfig,
    ToleranceNotReached,
    central_difference,
    integrate_beta,
    integrate_gaussian_weight,
    integrate_to_infinity,
)


def test_hermite_exact_on_polynomials(cfg):
    # Gauss-Hermite integrates polynomials below 2n exactly; these are the
    # moment identities the Gaussian-prior code paths lean on.
    assert integrate_gaussian_weight(lambda y: np.ones_like(y), 0.0, 1.0, cfg) == pytest.approx(1.0, abs=1e-14)
    assert integrate_gaussian_weight(lambda y: y, 1.5, 2.0, cfg) == pytest.approx(1.5, abs=1e-13)
    assert integrate_gaussian_weight(lambda y: y * y, 1.5, 2.0, cfg) == pytest.approx(2.0 + 2.25, abs=1e-12)
    assert integrate_gaussian_weight(lambda y: y**4, 0.0, 1.0, cfg) == pytest.approx(3.0, abs=1e-12)


def test_gaussian_weight_closed_form(cfg):
    # E[cos Y] = cos(m) exp(-v/2)
    for m, v in [(0.0, 1.0), (1.5, 2.0), (-0.7, 0.3)]:
        want = math.cos(m) * math.exp(-v / 2.0)
        got = integrate_gaussian_weight(lambda y: np.cos(y), m, v, cfg)
        assert got == pytest.approx(want, abs=1e-12)


def test_hermite_matches_adaptive(cfg):
    f = lambda y: np.tanh(y) * y
    a = integrate_gaussian_weight(f, 1.0, 1.0, cfg, method="hermite")
    b = integrate_gaussian_weight(f, 1.0, 1.0, cfg, method="adaptive")
    assert a == pytest.approx(b, abs=1e-8)


def test_gaussian_weight_against_mc_oracle(cfg):
    # Frozen plain-numpy Monte Carlo, PCG64 seed 424242, 2e7 samples:
    # E[y tanh y] for y ~ N(1, 1) = 0.9997989891, stderr 1.92e-4.
    got = integrate_gaussian_weight(lambda y: y * np.tanh(y), 1.0, 1.0, cfg)
    assert abs(got - 0.9997989891) < 3.0 * 1.92e-4


def test_integrate_beta_polynomial(cfg):
    val = integrate_beta(lambda g: g, 0.0, 2.0, cfg, limit_at_zero=0.0)
    assert val == pytest.approx(2.0, abs=1e-10)
    val = integrate_beta(lambda g: math.exp(g), 0.0, 1.0, cfg, limit_at_zero=1.0)
    assert val == pytest.approx(math.e - 1.0, abs=1e-9)


def test_integrate_beta_interior_interval(cfg):
    val = integrate_beta(lambda g: 1.0 / g, 1.0, math.e, cfg)
    assert val == pytest.approx(1.0, abs=1e-10)


def test_integrate_beta_truncates_without_limit(cfg):
    # With no zero limit supplied the integral starts at the floor, so an
    # integrable 1/sqrt singularity loses the first 2 sqrt(floor) of mass.
    val = integrate_beta(lambda g: 0.5 / math.sqrt(g), 0.0, 1.0, cfg)
    missing = math.sqrt(cfg.beta_floor)
    assert val == pytest.approx(1.0 - missing, abs=1e-7)


def test_integrate_to_infinity(cfg):
    val = integrate_to_infinity(lambda g: math.exp(-g), 1.0, cfg)
    assert val == pytest.approx(math.exp(-1.0), abs=1e-9)
    val = integrate_to_infinity(lambda g: g * math.exp(-g * g / 2.0), 1.0, cfg)
    assert val == pytest.approx(math.exp(-0.5), abs=1e-9)


def test_tolerance_failure_on_discontinuity(cfg):
    from dataclasses import replace

    hard = replace(cfg, simpson_tol=1e-15)
    step = lambda g: 0.0 if g < math.sqrt(0.5) else 2.0
    with pytest.raises(ToleranceNotReached):
        integrate_beta(step, 0.1, 1.0, hard)


def test_nonfinite_integrand_rejected(cfg):
    with pytest.raises(NonFiniteIntegrand):
        integrate_gaussian_weight(lambda y: np.full_like(y, np.nan), 0.0, 1.0, cfg)
    with pytest.raises(NonFiniteIntegrand):
        integrate_beta(lambda g: math.inf, 0.5, 1.0, cfg)


def test_central_difference():
    d = central_difference(lambda x: x**3, 2.0, 1e-4)
    assert d == pytest.approx(12.0, abs=1e-6)
    with pytest.raises(ValueError):
        central_difference(lambda x: x, 1e-9, 1e-3)  # stencil would cross zero


def test_config_validation_names_field():
    with pytest.raises(ConfigError, match="hermite_nodes"):
        QuadratureConfig(hermite_nodes=0)
    with pytest.raises(ConfigError, match="simpson_tol"):
        QuadratureConfig(simpson_tol=-1.0)
    with pytest.raises(ConfigError, match="beta_floor"):
        QuadratureConfig(beta_floor=0.0)
    with pytest.raises(ConfigError, match="fd_step"):
        QuadratureConfig(fd_step=0.0)


def test_bad_method_rejected(cfg):
    with pytest.raises(ValueError):
        integrate_gaussian_weight(lambda y: y, 0.0, 1.0, cfg, method="simpson")
