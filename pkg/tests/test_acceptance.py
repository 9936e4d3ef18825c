"""Acceptance gate: one test per criterion, run with -v for per-line status.

Every test asserts a numerical tolerance and a wall-clock budget, and
prints its observed worst case so a tee'd log carries the evidence.
"""
import math
import time
from dataclasses import replace

import numpy as np
import pytest

from thermomi import (
    NonEquiprobablePriorWarning,
    OracleConfig,
    QuadratureConfig,
    conditional_mean,
    free_energy_identity_residual,
    gsv_check,
    make_discrete,
    make_gaussian,
    mc_mutual_information,
    mi_bernoulli_closed,
    mi_gaussian_closed,
    mi_gsv,
    mi_thermo_classical,
    mi_thermo_generalized,
    mmse,
    posterior,
    prior_variance,
)

CFG = QuadratureConfig()
BERN = make_discrete([(-1.0, 0.5), (1.0, 0.5)])
TILTED = make_discrete([(-1.0, 0.25), (1.0, 0.75)])
GAUSS = make_gaussian(0.0, 1.0)


def test_criterion_1_gaussian_capacity():
    # generalized route within 1e-4 and mmse route within 1e-5 of
    # log(1 + beta)/2 on a 16-point geometric grid, under 10 s
    start = time.perf_counter()
    betas = np.geomspace(0.1, 10.0, 16)
    worst_gen = worst_gsv = 0.0
    for beta in betas:
        want = mi_gaussian_closed(float(beta))
        worst_gen = max(worst_gen, abs(mi_thermo_generalized(GAUSS, float(beta), CFG).value_nats - want))
        worst_gsv = max(worst_gsv, abs(mi_gsv(GAUSS, float(beta), CFG).value_nats - want))
    elapsed = time.perf_counter() - start
    print(f"criterion 1: gen_err={worst_gen:.2e} (<1e-4) gsv_err={worst_gsv:.2e} (<1e-5) "
          f"elapsed={elapsed:.2f}s (<10s)")
    assert worst_gen < 1e-4
    assert worst_gsv < 1e-5
    assert elapsed < 10.0


def test_criterion_2_uniform_pair_all_routes():
    # classical, generalized, and mmse routes all within 1e-4 of the
    # exact one-bit curve at five snrs, under 10 s
    start = time.perf_counter()
    worst = 0.0
    for beta in (0.25, 0.5, 1.0, 2.0, 5.0):
        want = mi_bernoulli_closed(beta, CFG)
        worst = max(
            worst,
            abs(mi_thermo_classical(BERN, beta, CFG).value_nats - want),
            abs(mi_thermo_generalized(BERN, beta, CFG).value_nats - want),
            abs(mi_gsv(BERN, beta, CFG).value_nats - want),
        )
    elapsed = time.perf_counter() - start
    print(f"criterion 2: route_err={worst:.2e} (<1e-4) elapsed={elapsed:.2f}s (<10s)")
    assert worst < 1e-4
    assert elapsed < 10.0


def test_criterion_3_classical_route_fails_for_gaussian():
    # the classical balance must visibly miss log(2)/2 at beta = 1 for a
    # Gaussian input, under 2 s
    start = time.perf_counter()
    with pytest.warns(NonEquiprobablePriorWarning):
        got = mi_thermo_classical(GAUSS, 1.0, CFG).value_nats
    gap = abs(got - 0.5 * math.log(2.0))
    elapsed = time.perf_counter() - start
    print(f"criterion 3: classical={got:.4f} gap={gap:.3f} (>0.01) elapsed={elapsed:.2f}s (<2s)")
    assert gap > 0.01
    assert elapsed < 2.0


def test_criterion_4_derivative_identity_and_stencil_order():
    # |d/dbeta I - mmse/2| < 1e-3 on a 12-point grid for both priors at
    # fd_step = 1e-3, and quartering the step cuts the worst residual by
    # at least 8x, under 30 s
    start = time.perf_counter()
    betas = np.linspace(0.1, 8.0, 12)
    quarter = replace(CFG, fd_step=CFG.fd_step / 4.0)
    ratios = {}
    worst_h = 0.0
    for name, dist in (("gauss", GAUSS), ("bern", BERN)):
        r_h = max(abs(gsv_check(dist, float(b), CFG).residual) for b in betas)
        r_q = max(abs(gsv_check(dist, float(b), quarter).residual) for b in betas)
        worst_h = max(worst_h, r_h)
        ratios[name] = r_h / r_q
    elapsed = time.perf_counter() - start
    print(f"criterion 4: residual={worst_h:.2e} (<1e-3) "
          f"quartering ratios={ {k: round(v, 1) for k, v in ratios.items()} } (>=8) "
          f"elapsed={elapsed:.1f}s (<30s)")
    assert worst_h < 1e-3
    assert all(r >= 8.0 for r in ratios.values())
    assert elapsed < 30.0


def test_criterion_5_free_energy_identity_discrete():
    # |log Z + beta U - S| < 1e-9 at 100 random (y, beta), under 1 s
    start = time.perf_counter()
    rng = np.random.default_rng(20260814)
    worst = 0.0
    for dist in (BERN, TILTED):
        betas = 10.0 ** rng.uniform(-2.0, 1.0, 50)
        ys = rng.uniform(-4.0, 4.0, 50)
        for y, beta in zip(ys, betas):
            worst = max(worst, abs(float(free_energy_identity_residual(dist, float(y), float(beta)))))
    elapsed = time.perf_counter() - start
    print(f"criterion 5: identity_residual={worst:.2e} (<1e-9) elapsed={elapsed:.2f}s (<1s)")
    assert worst < 1e-9
    assert elapsed < 1.0


def test_criterion_6_gauge_invariance():
    # adding 7.3 to every energy may move nothing observable by more
    # than 1e-10: posterior weights, both MI routes, mmse; under 2 s
    start = time.perf_counter()
    c = 7.3
    worst = 0.0
    for dist in (BERN, GAUSS):
        for beta in (0.5, 2.0):
            for y in (-1.1, 0.3, 1.8):
                base = posterior(dist, y, beta)
                moved = posterior(dist, y, beta, offset=c)
                if dist.is_discrete:
                    worst = max(worst, float(np.max(np.abs(moved.weights - base.weights))))
                else:
                    worst = max(worst, abs(moved.mean - base.mean), abs(moved.variance - base.variance))
            m0 = np.asarray(conditional_mean(dist, np.asarray([-0.7, 1.2]), beta))
            m1 = np.asarray(conditional_mean(dist, np.asarray([-0.7, 1.2]), beta, offset=c))
            worst = max(worst, float(np.max(np.abs(m1 - m0))))
            worst = max(worst, abs(mmse(dist, beta, CFG, offset=c) - mmse(dist, beta, CFG)))
            worst = max(
                worst,
                abs(
                    mi_thermo_generalized(dist, beta, CFG, energy_offset=c).value_nats
                    - mi_thermo_generalized(dist, beta, CFG).value_nats
                ),
            )
        if dist.is_discrete:
            worst = max(
                worst,
                abs(
                    mi_thermo_classical(dist, 1.0, CFG, energy_offset=c).value_nats
                    - mi_thermo_classical(dist, 1.0, CFG).value_nats
                ),
            )
    elapsed = time.perf_counter() - start
    print(f"criterion 6: gauge_shift={worst:.2e} (<1e-10) elapsed={elapsed:.2f}s (<2s)")
    assert worst < 1e-10
    assert elapsed < 2.0


def test_criterion_7_monte_carlo_brackets_closed_forms():
    # 1e7-sample Monte Carlo estimates stay within 3 standard errors of
    # the closed forms for both priors at beta in {0.5, 2}, under 60 s
    start = time.perf_counter()
    oracle = OracleConfig(mc_samples=10_000_000, rng_seed=20260814)
    worst_z = 0.0
    for dist, closed in ((BERN, lambda b: mi_bernoulli_closed(b, CFG)), (GAUSS, mi_gaussian_closed)):
        for beta in (0.5, 2.0):
            est = mc_mutual_information(dist, beta, oracle)
            z = abs(est.value - closed(beta)) / est.stderr
            worst_z = max(worst_z, z)
    elapsed = time.perf_counter() - start
    print(f"criterion 7: worst |z|={worst_z:.2f} (<3) elapsed={elapsed:.1f}s (<60s)")
    assert worst_z < 3.0
    assert elapsed < 60.0


def test_criterion_8_limits_monotonicity_and_bounds():
    # I(1e-4) < 1e-4, I nondecreasing along the grid, and
    # 0 <= mmse <= var(X), for both priors, under 5 s
    start = time.perf_counter()
    betas = np.geomspace(0.1, 10.0, 8)
    near_zero = drop = bound = 0.0
    for dist in (BERN, GAUSS):
        near_zero = max(near_zero, abs(mi_thermo_generalized(dist, 1e-4, CFG).value_nats))
        vals = [mi_thermo_generalized(dist, float(b), CFG).value_nats for b in betas]
        drop = max(drop, max(0.0, -min(np.diff(vals))))
        cap = prior_variance(dist)
        for beta in [0.0, *betas]:
            m = mmse(dist, float(beta), CFG)
            bound = max(bound, -m, m - cap)
    elapsed = time.perf_counter() - start
    print(f"criterion 8: I(1e-4)={near_zero:.2e} (<1e-4) largest_drop={drop:.2e} "
          f"mmse_violation={bound:.2e} elapsed={elapsed:.2f}s (<5s)")
    assert near_zero < 1e-4
    assert drop == 0.0
    assert bound <= 0.0
    assert elapsed < 5.0
