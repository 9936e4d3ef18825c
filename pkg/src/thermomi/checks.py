"""Self-consistency checks behind the verify subcommand.

Each check exercises a relation the implementation must satisfy no matter
what the prior is: the free-energy identity, invariance under an additive
energy offset, cross-route agreement, the derivative/mmse link, and basic
shape facts about I(beta) and mmse(beta).  A check never raises on a bad
value; it reports pass/fail so the CLI can show the whole table and exit
nonzero once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import boltzmann, estimation, thermo
from .config import RunConfig
from .distributions import InputDistribution, prior_mean, prior_variance
from .errors import ConfigError
from .quadrature import QuadratureConfig
from .reference import closed_form_mi
from .sweep import parse_routes

GAUGE_OFFSET = 7.3
GSV_CHECK_MAX_POINTS = 12
NEAR_ZERO_BETA = 1e-4

IDENTITY_POINTS = 100
IDENTITY_TOL = 1e-9
GAUGE_TOL = 1e-10
ROUTE_AGREEMENT_TOL = 1e-6
GSV_TOL = 1e-3
CLOSED_FORM_TOL = 1e-4
MONOTONE_SLACK = 1e-6
MMSE_SLACK = 1e-9


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check."""

    name: str
    passed: bool
    observed: float
    threshold: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.name}: observed={self.observed:.3e} "
            f"threshold={self.threshold:.1e} ({self.detail})"
        )


def _check_identity(dist: InputDistribution, cfg: QuadratureConfig, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    betas = 10.0 ** rng.uniform(-2.0, 1.0, IDENTITY_POINTS)
    worst = 0.0
    for beta in betas:
        scale = math.sqrt(prior_variance(dist) + 1.0 / beta)
        y = prior_mean(dist) + scale * rng.uniform(-4.0, 4.0)
        r = abs(float(boltzmann.free_energy_identity_residual(dist, y, float(beta))))
        worst = max(worst, r)
    return CheckResult(
        name="free_energy_identity",
        passed=worst < IDENTITY_TOL,
        observed=worst,
        threshold=IDENTITY_TOL,
        detail=f"max |log Z + beta U - S| over {IDENTITY_POINTS} random (y, beta)",
    )


def _check_gauge(
    dist: InputDistribution,
    cfg: QuadratureConfig,
    routes: tuple[str, ...],
    betas: np.ndarray,
) -> CheckResult:
    c = GAUGE_OFFSET
    probe_betas = [float(betas[0]), float(betas[betas.size // 2]), float(betas[-1])]
    scale = math.sqrt(prior_variance(dist) + 1.0)
    ys = prior_mean(dist) + scale * np.asarray([-1.3, 0.4, 2.0])
    worst = 0.0
    for beta in probe_betas:
        for y in ys:
            base = boltzmann.posterior(dist, float(y), beta)
            moved = boltzmann.posterior(dist, float(y), beta, offset=c)
            if dist.is_discrete:
                worst = max(worst, float(np.max(np.abs(moved.weights - base.weights))))
            else:
                worst = max(worst, abs(moved.mean - base.mean), abs(moved.variance - base.variance))
    mid = probe_betas[1]
    base_mi = thermo.mi_thermo_generalized(dist, mid, cfg).value_nats
    moved_mi = thermo.mi_thermo_generalized(dist, mid, cfg, energy_offset=c).value_nats
    worst = max(worst, abs(moved_mi - base_mi))
    if "classical" in routes and not boltzmann.beta_dependent_energy(dist):
        base_cls = thermo.mi_thermo_classical(dist, mid, cfg).value_nats
        moved_cls = thermo.mi_thermo_classical(dist, mid, cfg, energy_offset=c).value_nats
        worst = max(worst, abs(moved_cls - base_cls))
    base_mmse = estimation.mmse(dist, mid, cfg)
    moved_mmse = estimation.mmse(dist, mid, cfg, offset=c)
    worst = max(worst, abs(moved_mmse - base_mmse))
    return CheckResult(
        name="gauge_invariance",
        passed=worst < GAUGE_TOL,
        observed=worst,
        threshold=GAUGE_TOL,
        detail=f"max change in weights, MI routes, mmse under energy offset {c}",
    )


def _check_route_agreement(
    dist: InputDistribution,
    cfg: QuadratureConfig,
    betas: np.ndarray,
    mi_gen: dict[float, float],
) -> CheckResult:
    picks = betas if betas.size <= 5 else betas[np.linspace(0, betas.size - 1, 5).round().astype(int)]
    worst = 0.0
    at = float(picks[0])
    for beta in picks:
        cls = thermo.mi_thermo_classical(dist, float(beta), cfg).value_nats
        gap = abs(cls - mi_gen[float(beta)])
        if gap > worst:
            worst, at = gap, float(beta)
    return CheckResult(
        name="route_agreement",
        passed=worst < ROUTE_AGREEMENT_TOL,
        observed=worst,
        threshold=ROUTE_AGREEMENT_TOL,
        detail=f"max |classical - generalized| over {picks.size} grid points (worst at beta={at:g})",
    )


def _check_gsv(dist: InputDistribution, cfg: QuadratureConfig, betas: np.ndarray) -> CheckResult:
    usable = betas[betas > cfg.fd_step]
    if usable.size == 0:
        return CheckResult(
            name="derivative_matches_half_mmse",
            passed=True,
            observed=0.0,
            threshold=GSV_TOL,
            detail="skipped: no grid point exceeds fd_step",
        )
    if usable.size > GSV_CHECK_MAX_POINTS:
        idx = np.linspace(0, usable.size - 1, GSV_CHECK_MAX_POINTS).round().astype(int)
        usable = usable[idx]
    worst = 0.0
    for beta in usable:
        worst = max(worst, abs(estimation.gsv_check(dist, float(beta), cfg).residual))
    return CheckResult(
        name="derivative_matches_half_mmse",
        passed=worst < GSV_TOL,
        observed=worst,
        threshold=GSV_TOL,
        detail=f"max |dI/dbeta - mmse/2| over {usable.size} grid points",
    )


def _check_closed_form(
    dist: InputDistribution,
    cfg: QuadratureConfig,
    betas: np.ndarray,
    mi_gen: dict[float, float],
) -> CheckResult | None:
    gaps = []
    for beta in betas:
        closed = closed_form_mi(dist, float(beta), cfg)
        if closed is None:
            return None
        gaps.append(abs(mi_gen[float(beta)] - closed))
    worst = max(gaps)
    return CheckResult(
        name="closed_form_agreement",
        passed=worst < CLOSED_FORM_TOL,
        observed=worst,
        threshold=CLOSED_FORM_TOL,
        detail=f"max |generalized - exact| over {betas.size} grid points",
    )


def _check_near_zero(dist: InputDistribution, cfg: QuadratureConfig) -> CheckResult:
    value = thermo.mi_thermo_generalized(dist, NEAR_ZERO_BETA, cfg).value_nats
    return CheckResult(
        name="mi_vanishes_at_zero_snr",
        passed=abs(value) < NEAR_ZERO_BETA,
        observed=abs(value),
        threshold=NEAR_ZERO_BETA,
        detail=f"|I(beta)| at beta = {NEAR_ZERO_BETA}",
    )


def _check_monotone(betas: np.ndarray, mi_gen: dict[float, float]) -> CheckResult:
    values = np.asarray([mi_gen[float(b)] for b in betas])
    drop = float(np.min(np.diff(values))) if values.size > 1 else 0.0
    worst = max(0.0, -drop)
    return CheckResult(
        name="mi_nondecreasing",
        passed=worst <= MONOTONE_SLACK,
        observed=worst,
        threshold=MONOTONE_SLACK,
        detail=f"largest decrease of I along the {betas.size}-point grid",
    )


def _check_mmse_bounds(dist: InputDistribution, cfg: QuadratureConfig, betas: np.ndarray) -> CheckResult:
    cap = prior_variance(dist)
    worst = 0.0
    for beta in betas:
        m = estimation.mmse(dist, float(beta), cfg)
        worst = max(worst, -m, m - cap)
    return CheckResult(
        name="mmse_within_bounds",
        passed=worst <= MMSE_SLACK,
        observed=max(worst, 0.0),
        threshold=MMSE_SLACK,
        detail=f"violation of 0 <= mmse <= prior variance ({cap:g}) over {betas.size} points",
    )


def run_verify(config: RunConfig, routes: tuple[str, ...] | None = None) -> list[CheckResult]:
    """Run every applicable check; the caller decides what failure means."""
    dist = config.prior
    cfg = config.quadrature
    chosen = parse_routes(None, dist) if routes is None else routes
    betas = config.grid.expand()
    betas = betas[betas > cfg.beta_floor]
    if betas.size == 0:
        raise ConfigError("beta grid empty")
    mi_gen = {float(b): thermo.mi_thermo_generalized(dist, float(b), cfg).value_nats for b in betas}
    results = [
        _check_identity(dist, cfg, config.oracle.rng_seed),
        _check_gauge(dist, cfg, chosen, betas),
    ]
    if "classical" in chosen:
        results.append(_check_route_agreement(dist, cfg, betas, mi_gen))
    if "gsv" in chosen:
        results.append(_check_gsv(dist, cfg, betas))
    closed = _check_closed_form(dist, cfg, betas, mi_gen)
    if closed is not None:
        results.append(closed)
    results.append(_check_near_zero(dist, cfg))
    results.append(_check_monotone(betas, mi_gen))
    results.append(_check_mmse_bounds(dist, cfg, betas))
    return results
