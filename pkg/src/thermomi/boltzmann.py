"""Boltzmann posterior of the additive Gaussian-noise channel.

For Y = X + N with N ~ N(0, 1/beta), Bayes' rule can be read as a Gibbs
measure at inverse temperature beta: defining the per-realization energy

    E(x | y; beta) = -x*y + x^2/2 - log P(x) / beta,

the posterior is P(x | y) = exp(-beta E) / Z with partition function Z.
Additive constants in E are a gauge choice: they cancel from the posterior
and from every mutual-information route, so terms that are constant across
the support are dropped.  Concretely,

  * the x^2/2 term is dropped when all atoms share one magnitude (for a
    +-1 alphabet it is a constant 1/2),
  * the -log P(x)/beta term is dropped when the prior is equiprobable,
  * for a Gaussian prior only the normalizer log(2 pi v)/(2 beta) is
    dropped, leaving (x - m)^2 / (2 v beta).

With this convention a uniform +-1 input has E = -x*y, independent of
beta, which is exactly the case where the classical entropy route below is
valid.  The ``offset`` argument threaded through this module shifts every
energy by a constant; results must not depend on it (gauge invariance) and
tests drive that requirement directly.

All functions accept scalar or ndarray ``y`` and return a matching shape,
except :func:`posterior`, which builds a per-observation object.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .distributions import InputDistribution, prior_entropy
from .errors import AtomNotFound, BetaZero
from .quadrature import QuadratureConfig, central_difference

LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class ChannelPoint:
    """A point on the signal-to-noise axis; beta is the inverse temperature."""

    beta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.beta) or self.beta < 0.0:
            raise ValueError(f"beta must be finite and >= 0, got {self.beta!r}")

    @property
    def noise_variance(self) -> float:
        if self.beta == 0.0:
            raise BetaZero("noise variance is infinite at beta = 0")
        return 1.0 / self.beta

    @property
    def snr_db(self) -> float:
        if self.beta == 0.0:
            raise BetaZero("snr in dB is undefined at beta = 0")
        return 10.0 * math.log10(self.beta)


@dataclass(frozen=True, eq=False)
class DiscretePosterior:
    """Posterior point masses for one observation."""

    y: float
    beta: float
    atoms: np.ndarray
    weights: np.ndarray
    log_partition: float

    @property
    def mean(self) -> float:
        return float(np.dot(self.weights, self.atoms))

    @property
    def variance(self) -> float:
        return float(np.dot(self.weights, (self.atoms - self.mean) ** 2))

    @property
    def entropy(self) -> float:
        w = self.weights
        return float(-np.sum(np.where(w > 0.0, w * np.log(np.where(w > 0.0, w, 1.0)), 0.0)))


@dataclass(frozen=True)
class GaussianPosterior:
    """Posterior N(mean, variance) for one observation."""

    y: float
    beta: float
    mean: float
    variance: float
    log_partition: float

    @property
    def entropy(self) -> float:
        return 0.5 * (LOG_2PI + 1.0 + math.log(self.variance))


Posterior = DiscretePosterior | GaussianPosterior


@lru_cache(maxsize=128)
def _discrete_terms(dist: InputDistribution) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-atom energy pieces (values, beta-free quadratic part, 1/beta part)."""
    v = dist.values
    quad = 0.5 * v * v
    if float(np.max(quad) - np.min(quad)) < 1e-12:
        quad = np.zeros_like(quad)
    if dist.is_equiprobable:
        logp_term = np.zeros_like(v)
    else:
        logp_term = -np.log(dist.probs)
    return v, quad, logp_term


def beta_dependent_energy(dist: InputDistribution) -> bool:
    """True when the energy keeps an explicit 1/beta term.

    Equiprobable discrete priors drop it (their log-masses are a constant),
    everything else keeps it, and the classical entropy route is only exact
    when this returns False.
    """
    if dist.is_discrete:
        return not dist.is_equiprobable
    return True


def _require_beta(dist: InputDistribution, beta: float) -> None:
    if not math.isfinite(beta) or beta < 0.0:
        raise ValueError(f"beta must be finite and >= 0, got {beta!r}")
    if beta == 0.0 and beta_dependent_energy(dist):
        raise BetaZero("energy retains a log-prior/beta term, undefined at beta = 0")


def energy(dist: InputDistribution, x: float, y: float, beta: float, offset: float = 0.0) -> float:
    """Per-realization energy E(x | y; beta) under the gauge described above."""
    _require_beta(dist, beta)
    if dist.is_discrete:
        v, quad, logp_term = _discrete_terms(dist)
        deltas = np.abs(v - x)
        i = int(np.argmin(deltas))
        if deltas[i] > 1e-12 * max(1.0, abs(x)):
            raise AtomNotFound(f"{x!r} is not an atom of the discrete prior")
        tail = logp_term[i] / beta if beta > 0.0 else 0.0
        return float(-v[i] * y + quad[i] + tail + offset)
    if beta == 0.0:
        raise BetaZero("Gaussian-prior energy is undefined at beta = 0")
    m, var = dist.mean, dist.variance
    return -x * y + 0.5 * x * x + (x - m) ** 2 / (2.0 * var * beta) + offset


def energy_dbeta(dist: InputDistribution, x: float, y: float, beta: float) -> float:
    """d/dbeta of the energy at fixed (x, y).

    The only beta dependence sits in the kept log-prior term K(x)/beta, so
    this is -K(x)/beta^2; it vanishes identically for equiprobable discrete
    priors.
    """
    if dist.is_discrete:
        v, _, logp_term = _discrete_terms(dist)
        deltas = np.abs(v - x)
        i = int(np.argmin(deltas))
        if deltas[i] > 1e-12 * max(1.0, abs(x)):
            raise AtomNotFound(f"{x!r} is not an atom of the discrete prior")
        if logp_term[i] == 0.0:
            return 0.0
        if beta <= 0.0:
            raise BetaZero("d(energy)/d(beta) undefined at beta = 0 for this prior")
        return float(-logp_term[i] / (beta * beta))
    if beta <= 0.0:
        raise BetaZero("d(energy)/d(beta) undefined at beta = 0 for a Gaussian prior")
    return -((x - dist.mean) ** 2) / (2.0 * dist.variance * beta * beta)


def _discrete_weights(dist, y, beta, offset):
    """Posterior weights and log Z on a vector of observations.

    Returns (weights (k, n), log_partition (n,)).  Log-domain with max
    subtraction; the constant offset enters as -beta*offset in log Z and
    cancels from the weights up to roundoff.
    """
    yv = np.asarray(y, dtype=float).reshape(-1)
    v, quad, logp_term = _discrete_terms(dist)
    if beta == 0.0:
        w = np.repeat(dist.probs[:, None], yv.size, axis=1)
        logz = np.full(yv.shape, float(np.log(np.sum(np.exp(-logp_term)))))
        return w, logz
    energies = -v[:, None] * yv[None, :] + quad[:, None] + (logp_term / beta)[:, None] + offset
    logw = -beta * energies
    shift = np.max(logw, axis=0)
    logz = shift + np.log(np.sum(np.exp(logw - shift), axis=0))
    return np.exp(logw - logz), logz


def _gaussian_moments(dist, y, beta):
    """Closed-form posterior mean and variance for a Gaussian prior."""
    yv = np.asarray(y, dtype=float)
    lam = 1.0 / dist.variance + beta
    mean = (dist.mean / dist.variance + beta * yv) / lam
    return mean, 1.0 / lam


def posterior(dist: InputDistribution, y: float, beta: float, offset: float = 0.0) -> Posterior:
    """Posterior of X given Y = y at inverse temperature beta.

    beta = 0 returns the prior itself with log_partition fixed at 0 by
    convention (the function :func:`log_partition` keeps its natural
    beta -> 0 limit instead; the two conventions differ by the dropped
    constants' limit).
    """
    y = float(y)
    if not math.isfinite(y):
        raise ValueError(f"y must be finite, got {y!r}")
    if not math.isfinite(beta) or beta < 0.0:
        raise ValueError(f"beta must be finite and >= 0, got {beta!r}")
    if dist.is_discrete:
        if beta == 0.0:
            return DiscretePosterior(y=y, beta=0.0, atoms=dist.values.copy(), weights=dist.probs.copy(), log_partition=0.0)
        w, logz = _discrete_weights(dist, y, beta, offset)
        return DiscretePosterior(y=y, beta=beta, atoms=dist.values.copy(), weights=w[:, 0], log_partition=float(logz[0]))
    if beta == 0.0:
        return GaussianPosterior(y=y, beta=0.0, mean=dist.mean, variance=dist.variance, log_partition=0.0)
    mean, var = _gaussian_moments(dist, y, beta)
    return GaussianPosterior(y=y, beta=beta, mean=float(mean), variance=float(var), log_partition=float(log_partition(dist, y, beta, offset)))


def log_partition(dist: InputDistribution, y, beta: float, offset: float = 0.0):
    """log Z(y; beta) under the energy gauge of this module.

    For a uniform +-1 input this is log(2 cosh(beta y)); its beta -> 0
    limit is log(number of atoms) for equiprobable priors.
    """
    if not math.isfinite(beta) or beta < 0.0:
        raise ValueError(f"beta must be finite and >= 0, got {beta!r}")
    if dist.is_discrete:
        _, logz = _discrete_weights(dist, y, beta, offset)
        return _match_shape(logz, y)
    yv = np.asarray(y, dtype=float)
    m, var = dist.mean, dist.variance
    lam = 1.0 / var + beta
    b = beta * yv + m / var
    logz = 0.5 * (LOG_2PI - np.log(lam)) + b * b / (2.0 * lam) - m * m / (2.0 * var) - beta * offset
    return _match_shape(logz, y)


def internal_energy(dist: InputDistribution, y, beta: float, offset: float = 0.0):
    """U(y; beta), the posterior average of the energy."""
    _require_beta(dist, beta)
    if dist.is_discrete:
        yv = np.asarray(y, dtype=float).reshape(-1)
        v, quad, logp_term = _discrete_terms(dist)
        if beta == 0.0:
            # Only reachable for equiprobable priors, where E is beta-free.
            e = -v[:, None] * yv[None, :] + quad[:, None] + offset
            u = np.sum(dist.probs[:, None] * e, axis=0)
            return _match_shape(u, y)
        w, _ = _discrete_weights(dist, y, beta, offset)
        e = -v[:, None] * yv[None, :] + quad[:, None] + (logp_term / beta)[:, None] + offset
        return _match_shape(np.sum(w * e, axis=0), y)
    mean, var = _gaussian_moments(dist, y, beta)
    yv = np.asarray(y, dtype=float)
    m, pv = dist.mean, dist.variance
    u = -mean * yv + 0.5 * (var + mean * mean) + (var + (mean - m) ** 2) / (2.0 * pv * beta) + offset
    return _match_shape(u, y)


def mean_static_energy(dist: InputDistribution, y, beta: float, offset: float = 0.0):
    """Posterior average of the beta-free part of the energy.

    Algebraically this equals U + beta * E[dE/dbeta | y]: the 1/beta terms
    of the two summands cancel exactly, which keeps the generalized-law
    integrand finite all the way down to beta = 0 (where the posterior is
    the prior).
    """
    if not math.isfinite(beta) or beta < 0.0:
        raise ValueError(f"beta must be finite and >= 0, got {beta!r}")
    if dist.is_discrete:
        yv = np.asarray(y, dtype=float).reshape(-1)
        v, quad, _ = _discrete_terms(dist)
        if beta == 0.0:
            w = dist.probs[:, None]
        else:
            w, _ = _discrete_weights(dist, y, beta, 0.0)
        a = -v[:, None] * yv[None, :] + quad[:, None]
        return _match_shape(np.sum(w * a, axis=0) + offset, y)
    if beta == 0.0:
        mean, var = dist.mean, dist.variance
    else:
        mean, var = _gaussian_moments(dist, y, beta)
    yv = np.asarray(y, dtype=float)
    return _match_shape(-mean * yv + 0.5 * (var + mean * mean) + offset, y)


def posterior_entropy(dist: InputDistribution, y, beta: float):
    """Entropy of the posterior: Shannon for discrete, differential for Gaussian."""
    if not math.isfinite(beta) or beta < 0.0:
        raise ValueError(f"beta must be finite and >= 0, got {beta!r}")
    if dist.is_discrete:
        if beta == 0.0:
            out = np.broadcast_to(prior_entropy(dist), np.shape(np.asarray(y))).copy()
            return _match_shape(out, y)
        w, _ = _discrete_weights(dist, y, beta, 0.0)
        ent = -np.sum(np.where(w > 0.0, w * np.log(np.where(w > 0.0, w, 1.0)), 0.0), axis=0)
        return _match_shape(ent, y)
    if beta == 0.0:
        var = dist.variance
    else:
        _, var = _gaussian_moments(dist, y, beta)
    out = 0.5 * (LOG_2PI + 1.0 + math.log(var)) + np.zeros_like(np.asarray(y, dtype=float))
    return _match_shape(out, y)


def free_energy_identity_residual(dist: InputDistribution, y, beta: float, offset: float = 0.0):
    """log Z + beta U - S, which is identically zero for a Gibbs posterior.

    The three pieces are computed through their separate code paths, so a
    nonzero residual beyond roundoff means one of them is wrong.  The
    offset cancels between log Z and beta U.  Vectorized over y.
    """
    lz = log_partition(dist, y, beta, offset)
    u = internal_energy(dist, y, beta, offset)
    s = posterior_entropy(dist, y, beta)
    return lz + beta * u - s


def heat_capacity(dist: InputDistribution, y: float, beta: float, cfg: QuadratureConfig, offset: float = 0.0) -> float:
    """C_V(y; beta) = dU/dbeta by central difference with step cfg.fd_step.

    A finite difference is used on purpose: the fluctuation formula
    beta^2 Var(E) is wrong whenever the energy itself depends on beta,
    which is exactly the regime the generalized route exists for.
    """
    return central_difference(lambda b: float(internal_energy(dist, y, b, offset)), beta, cfg.fd_step)


def posterior_mean_variance(dist: InputDistribution, y, beta: float, offset: float = 0.0):
    """Vectorized posterior mean and variance of X given Y = y.

    The energy offset is accepted so gauge invariance of the moments can be
    demonstrated end to end; it cancels inside the weights.
    """
    if not math.isfinite(beta) or beta < 0.0:
        raise ValueError(f"beta must be finite and >= 0, got {beta!r}")
    if dist.is_discrete:
        yv = np.asarray(y, dtype=float).reshape(-1)
        if beta == 0.0:
            w = np.repeat(dist.probs[:, None], yv.size, axis=1)
        else:
            w, _ = _discrete_weights(dist, y, beta, offset)
        v = dist.values
        mean = np.sum(w * v[:, None], axis=0)
        var = np.sum(w * (v[:, None] - mean[None, :]) ** 2, axis=0)
        return _match_shape(mean, y), _match_shape(var, y)
    if beta == 0.0:
        yv = np.asarray(y, dtype=float)
        mean = dist.mean + np.zeros_like(yv)
        return _match_shape(mean, y), _match_shape(dist.variance + np.zeros_like(yv), y)
    mean, var = _gaussian_moments(dist, y, beta)
    return _match_shape(mean, y), _match_shape(var + np.zeros_like(mean), y)


def _match_shape(values: np.ndarray, y):
    """Collapse to a float when the caller passed a scalar observation."""
    if np.ndim(y) == 0:
        return float(np.asarray(values).reshape(-1)[0])
    return np.asarray(values).reshape(np.shape(y))
