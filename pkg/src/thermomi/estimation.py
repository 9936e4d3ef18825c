"""Estimation-theoretic route: conditional mean, MMSE, and the I-MMSE link.

The derivative of the channel's mutual information with respect to the
signal-to-noise ratio is half the minimum mean-square error,

    dI/dbeta = mmse(beta) / 2,

so integrating the right-hand side gives an independent route to I that
never touches the energy bookkeeping.  :func:`gsv_check` probes the
identity the strong way round: the left side differentiates the
generalized thermodynamic route numerically, so agreement really does tie
the two formulations together instead of testing a function against
itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import boltzmann
from .distributions import InputDistribution, prior_variance
from .quadrature import QuadratureConfig, central_difference, integrate_beta
from .thermo import MIResult, ROUTE_GSV, expect_output, mi_thermo_generalized

# Settings for the integrals behind a finite-difference stencil.  The
# difference quotient amplifies any quadrature error by 1/(2 fd_step), and
# the identity is probed at the 1e-3 scale, so those evaluations must be
# resolved well past the headline tolerances: a tighter Simpson target and
# enough Hermite nodes that the peaked posterior-variance integrands at
# large beta contribute less than the O(fd_step^2) stencil error.
FD_EVAL_TOL = 1e-13
FD_EVAL_NODES = 512


@dataclass(frozen=True)
class GsvCheck:
    """One evaluation of the derivative/MMSE identity at a given beta."""

    beta: float
    lhs_dI_dbeta: float
    rhs_half_mmse: float

    @property
    def residual(self) -> float:
        return self.lhs_dI_dbeta - self.rhs_half_mmse


def conditional_mean(dist: InputDistribution, y, beta: float, offset: float = 0.0):
    """E[X | Y = y], vectorized over y.

    For a uniform +-1 input this is tanh(beta y); for a Gaussian prior it
    is the usual linear shrinkage beta v y / (1 + beta v) toward the prior
    mean.  beta = 0 returns the prior mean.  The energy offset is a gauge
    choice and cannot move the estimate.
    """
    mean, _ = boltzmann.posterior_mean_variance(dist, y, beta, offset)
    return mean


def mmse(dist: InputDistribution, beta: float, cfg: QuadratureConfig, offset: float = 0.0) -> float:
    """E_Y[Var(X | Y)] at inverse temperature beta.

    The Gaussian-prior posterior variance does not depend on y, so that
    case is closed form; discrete priors average the posterior variance
    over the output mixture.  beta = 0 is the prior variance.
    """
    if not math.isfinite(beta) or beta < 0.0:
        raise ValueError(f"beta must be finite and >= 0, got {beta!r}")
    if beta == 0.0:
        return prior_variance(dist)
    if not dist.is_discrete:
        v = dist.variance
        return v / (1.0 + beta * v)
    return expect_output(
        dist, beta, lambda y: boltzmann.posterior_mean_variance(dist, y, beta, offset)[1], cfg
    )


def mi_gsv(dist: InputDistribution, beta: float, cfg: QuadratureConfig) -> MIResult:
    """Mutual information as (1/2) integral of mmse from 0 to beta."""
    if not math.isfinite(beta) or beta <= cfg.beta_floor:
        raise ValueError(f"target beta must exceed beta_floor = {cfg.beta_floor!r}, got {beta!r}")
    value = 0.5 * integrate_beta(
        lambda g: mmse(dist, g, cfg),
        0.0,
        beta,
        cfg,
        limit_at_zero=prior_variance(dist),
    )
    return MIResult(beta=beta, value_nats=value, route=ROUTE_GSV, boundary_term=0.0, integral_term=value)


def gsv_check(dist: InputDistribution, beta: float, cfg: QuadratureConfig) -> GsvCheck:
    """Compare d/dbeta of the generalized thermodynamic route to mmse/2.

    The derivative is a central difference with step cfg.fd_step; the two
    inner integrals run at FD_EVAL_TOL so that differencing does not dig
    into quadrature noise (halving fd_step must expose the O(step^2)
    stencil error, not the integrator's).
    """
    if beta <= cfg.fd_step:
        raise ValueError(f"beta = {beta!r} must exceed fd_step = {cfg.fd_step!r}")
    tight = replace(
        cfg,
        simpson_tol=min(cfg.simpson_tol, FD_EVAL_TOL),
        hermite_nodes=max(cfg.hermite_nodes, FD_EVAL_NODES),
    )
    lhs = central_difference(
        lambda b: mi_thermo_generalized(dist, b, tight).value_nats,
        beta,
        cfg.fd_step,
    )
    rhs = 0.5 * mmse(dist, beta, tight)
    return GsvCheck(beta=beta, lhs_dI_dbeta=lhs, rhs_half_mmse=rhs)
