"""Independent reference values: closed forms and Monte-Carlo estimators.

Nothing here shares an integration path with the thermodynamic routes, so
agreement between the two is evidence rather than tautology.  The one
disclosed exception: :func:`mc_mmse` reuses the library's conditional mean
inside its estimator, because that conditional mean *is* the estimator
being scored.

The Monte-Carlo generator is numpy's default PCG64, seeded explicitly and
split into per-batch child streams with SeedSequence.spawn; batch partial
sums are reduced with math.fsum, so estimates are reproducible bit for bit
for a given seed and sample count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import boltzmann
from .distributions import InputDistribution
from .errors import ConfigError
from .estimation import conditional_mean
from .quadrature import QuadratureConfig, integrate_gaussian_weight
from .thermo import log_output_density

LN2 = math.log(2.0)
BATCH = 1_000_000


@dataclass(frozen=True)
class OracleConfig:
    """Monte-Carlo oracle settings."""

    mc_samples: int = 1_000_000
    rng_seed: int = 20260814
    hermite_nodes: int = 128

    def __post_init__(self) -> None:
        if not isinstance(self.mc_samples, int) or self.mc_samples < 1000:
            raise ConfigError(f"mc_samples must be an integer >= 1000, got {self.mc_samples!r}")
        if not isinstance(self.rng_seed, int) or self.rng_seed < 0:
            raise ConfigError(f"rng_seed must be a nonnegative integer, got {self.rng_seed!r}")
        if not isinstance(self.hermite_nodes, int) or self.hermite_nodes < 16:
            raise ConfigError(f"hermite_nodes must be an integer >= 16, got {self.hermite_nodes!r}")


@dataclass(frozen=True)
class McEstimate:
    """A Monte-Carlo estimate with its standard error."""

    value: float
    stderr: float
    samples: int


def log_cosh(u):
    """log(cosh(u)) without overflow: |u| + log1p(exp(-2|u|)) - log 2."""
    a = np.abs(np.asarray(u, dtype=float))
    out = a + np.log1p(np.exp(-2.0 * a)) - LN2
    return out if np.ndim(u) else float(out)


def mi_bernoulli_closed(beta: float, cfg: QuadratureConfig) -> float:
    """Closed-form mutual information for the uniform +-1 input, in nats:

        I(beta) = beta - E_Z[ log cosh(beta - sqrt(beta) Z) ],  Z ~ N(0, 1).
    """
    if beta < 0.0 or not math.isfinite(beta):
        raise ValueError(f"beta must be finite and >= 0, got {beta!r}")
    if beta == 0.0:
        return 0.0
    rb = math.sqrt(beta)
    return beta - integrate_gaussian_weight(lambda z: log_cosh(beta - rb * z), 0.0, 1.0, cfg)


def mi_gaussian_closed(beta: float) -> float:
    """Shannon capacity of the unit-variance Gaussian input: log(1 + beta)/2."""
    if beta < 0.0 or not math.isfinite(beta):
        raise ValueError(f"beta must be finite and >= 0, got {beta!r}")
    return 0.5 * math.log1p(beta)


def closed_form_mi(dist: InputDistribution, beta: float, cfg: QuadratureConfig) -> float | None:
    """Exact mutual information where one is known, else None.

    Covered: any Gaussian prior (log(1 + beta v)/2, the mean drops out) and
    the uniform +-1 pair.  Everything else has no closed form here.
    """
    if not dist.is_discrete:
        if dist.variance == 1.0:
            return mi_gaussian_closed(beta)
        return 0.5 * math.log1p(beta * dist.variance)
    values = dist.values
    if dist.is_equiprobable and values.size == 2 and values[0] == -1.0 and values[1] == 1.0:
        return mi_bernoulli_closed(beta, cfg)
    return None


def _sample_input(dist: InputDistribution, rng: np.random.Generator, n: int) -> np.ndarray:
    if dist.is_discrete:
        return rng.choice(dist.values, p=dist.probs, size=n)
    return dist.mean + math.sqrt(dist.variance) * rng.standard_normal(n)


def _batched_mean(term_fn, cfg: OracleConfig) -> McEstimate:
    """Mean and stderr of per-sample terms produced by term_fn(rng, k).

    Batches use independent child streams of the configured seed, and the
    partial sums are combined with fsum, so the reduction result does not
    depend on evaluation order.
    """
    n = cfg.mc_samples
    n_batches = (n + BATCH - 1) // BATCH
    children = np.random.SeedSequence(cfg.rng_seed).spawn(n_batches)
    sums, sq_sums = [], []
    done = 0
    for child in children:
        k = min(BATCH, n - done)
        t = np.asarray(term_fn(np.random.default_rng(child), k), dtype=float)
        sums.append(float(np.sum(t)))
        sq_sums.append(float(np.sum(t * t)))
        done += k
    mean = math.fsum(sums) / n
    var = max(0.0, (math.fsum(sq_sums) - n * mean * mean) / (n - 1))
    return McEstimate(value=mean, stderr=math.sqrt(var / n), samples=n)


def mc_mutual_information(dist: InputDistribution, beta: float, cfg: OracleConfig) -> McEstimate:
    """Monte-Carlo estimate of I(X; Y) = E[log p(Y | X) - log p(Y)]."""
    if beta <= 0.0 or not math.isfinite(beta):
        raise ValueError(f"beta must be finite and > 0, got {beta!r}")
    half_log = 0.5 * (math.log(beta) - math.log(2.0 * math.pi))

    def term(rng, k):
        x = _sample_input(dist, rng, k)
        y = x + rng.standard_normal(k) / math.sqrt(beta)
        log_lik = half_log - 0.5 * beta * (y - x) ** 2
        return log_lik - log_output_density(dist, y, beta)

    return _batched_mean(term, cfg)


def mc_mmse(dist: InputDistribution, beta: float, cfg: OracleConfig) -> McEstimate:
    """Monte-Carlo estimate of E[(X - E[X | Y])^2].

    Reuses the library's conditional mean by design (see module docstring).
    """
    if beta <= 0.0 or not math.isfinite(beta):
        raise ValueError(f"beta must be finite and > 0, got {beta!r}")

    def term(rng, k):
        x = _sample_input(dist, rng, k)
        y = x + rng.standard_normal(k) / math.sqrt(beta)
        return (x - conditional_mean(dist, y, beta)) ** 2

    return _batched_mean(term, cfg)


def mc_incremental_mi_rate(dist: InputDistribution, beta: float, delta: float, cfg: OracleConfig) -> McEstimate:
    """Monte-Carlo estimate of I(X; Y1 | Y2) / delta for a small side channel.

    Y2 = X + N(0, 1/beta) is the main observation and Y1 = sqrt(delta) X + N(0, 1)
    an almost-uninformative extra look.  As delta -> 0 this rate tends to
    mmse(beta) / 2, the differential form of the I-MMSE identity; the
    estimator exists purely as a sanity check of that construction.
    Discrete priors only (the inner mixture is a finite sum).
    """
    if not dist.is_discrete:
        raise ValueError("incremental-channel oracle is implemented for discrete priors only")
    if beta <= 0.0 or not math.isfinite(beta):
        raise ValueError(f"beta must be finite and > 0, got {beta!r}")
    if not (0.0 < delta < 0.1):
        raise ValueError(f"delta must lie in (0, 0.1), got {delta!r}")
    rd = math.sqrt(delta)
    atoms = dist.values

    def term(rng, k):
        x = _sample_input(dist, rng, k)
        y2 = x + rng.standard_normal(k) / math.sqrt(beta)
        y1 = rd * x + rng.standard_normal(k)
        log_lik = -0.5 * (y1 - rd * x) ** 2
        w, _ = boltzmann._discrete_weights(dist, y2, beta, 0.0)
        comp = np.log(np.maximum(w, 1e-300)) - 0.5 * (y1[None, :] - rd * atoms[:, None]) ** 2
        shift = np.max(comp, axis=0)
        log_mix = shift + np.log(np.sum(np.exp(comp - shift), axis=0))
        return (log_lik - log_mix) / delta

    return _batched_mean(term, cfg)
