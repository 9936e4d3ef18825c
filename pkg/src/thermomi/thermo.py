"""Mutual information via thermodynamic integration over inverse temperature.

Writing U(y; gamma) for the internal energy of the Boltzmann posterior at
inverse temperature gamma, the entropy balance of the channel gives

    I(beta) = -[gamma E_Y{U(Y; gamma)}]_0^beta
              + E_Y{ integral_0^beta W(Y; gamma) dgamma },

where the outer average is taken under the output density at the target
beta throughout.  Two choices of W are implemented:

  * classical route:    W = U.  Valid only when the energy carries no
    explicit gamma dependence, i.e. for equiprobable discrete priors; the
    entropy balance it rests on silently loses the term accounting for the
    energy levels themselves shifting with temperature.
  * generalized route:  W = U + gamma E[dE/dgamma | y].  The correction
    restores exactness for every supported prior; combined before
    integration the two 1/gamma pieces cancel, so W is the posterior mean
    of the beta-free energy part and stays finite down to gamma = 0.

The gamma -> 0 end of the boundary bracket is itself a finite limit
(1/2 for a unit-variance Gaussian prior, 0 for equiprobable inputs) and is
obtained by Richardson extrapolation from two evaluations near the floor.
Both routes report the boundary and integral contributions separately.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from . import boltzmann
from .distributions import InputDistribution, prior_entropy
from .errors import NonEquiprobablePrior, NonEquiprobablePriorWarning
from .quadrature import QuadratureConfig, integrate_beta, integrate_gaussian_weight, integrate_to_infinity

Route = Literal["thermo_classical", "thermo_generalized", "gsv", "closed_form"]

ROUTE_THERMO_CLASSICAL: Route = "thermo_classical"
ROUTE_THERMO_GENERALIZED: Route = "thermo_generalized"
ROUTE_GSV: Route = "gsv"
ROUTE_CLOSED_FORM: Route = "closed_form"


@dataclass(frozen=True)
class MIResult:
    """A mutual-information value in nats plus its route and decomposition.

    value_nats is boundary_term + integral_term by construction; routes
    without a natural split report a zero boundary term.
    """

    beta: float
    value_nats: float
    route: Route
    boundary_term: float
    integral_term: float


def log_output_density(dist: InputDistribution, y, beta: float):
    """log p(y; beta) of the channel output, vectorized over y.

    Discrete priors give a Gaussian mixture with one component per atom
    (evaluated in the log domain with max subtraction); a Gaussian prior
    gives N(mean, variance + 1/beta).
    """
    if beta <= 0.0 or not math.isfinite(beta):
        raise ValueError(f"beta must be finite and > 0, got {beta!r}")
    yv = np.asarray(y, dtype=float)
    if dist.is_discrete:
        flat = yv.reshape(-1)
        logp = np.log(dist.probs)
        comp = logp[:, None] - 0.5 * beta * (flat[None, :] - dist.values[:, None]) ** 2
        shift = np.max(comp, axis=0)
        mix = shift + np.log(np.sum(np.exp(comp - shift), axis=0))
        out = mix + 0.5 * (math.log(beta) - math.log(2.0 * math.pi))
        return boltzmann._match_shape(out, y)
    var = dist.variance + 1.0 / beta
    out = -0.5 * ((yv - dist.mean) ** 2 / var + math.log(2.0 * math.pi * var))
    return boltzmann._match_shape(out, y)


def output_density(dist: InputDistribution, y, beta: float):
    """p(y; beta), the channel output density."""
    return np.exp(log_output_density(dist, y, beta))


def expect_output(
    dist: InputDistribution,
    beta: float,
    f: Callable[[np.ndarray], np.ndarray],
    cfg: QuadratureConfig,
    method: str = "hermite",
) -> float:
    """E_Y[f(Y)] under the output density at inverse temperature beta.

    The mixture structure is used exactly: for discrete priors the result
    is the prior-weighted sum of per-component Gaussian expectations, so
    the only quadrature error is the per-component rule's.
    """
    if beta <= 0.0 or not math.isfinite(beta):
        raise ValueError(f"beta must be finite and > 0, got {beta!r}")
    noise_var = 1.0 / beta
    if dist.is_discrete:
        parts = [
            p * integrate_gaussian_weight(f, float(v), noise_var, cfg, method=method)
            for v, p in zip(dist.values, dist.probs)
        ]
        return float(math.fsum(parts))
    return integrate_gaussian_weight(f, dist.mean, dist.variance + noise_var, cfg, method=method)


def _mean_internal_energy(dist, beta_target, gamma, cfg, offset):
    """E_Y[U(Y; gamma)] with the output average pinned at the target beta."""
    return expect_output(dist, beta_target, lambda y: boltzmann.internal_energy(dist, y, gamma, offset), cfg)


def _mean_generalized_integrand(dist, beta_target, gamma, cfg, offset):
    """E_Y[U + gamma E[dE/dgamma]] at gamma, averaged at the target beta."""
    return expect_output(dist, beta_target, lambda y: boltzmann.mean_static_energy(dist, y, gamma, offset), cfg)


def _boundary_term(dist, beta, cfg, offset):
    """-[gamma E_Y{U}] evaluated between the gamma -> 0 limit and beta.

    The lower end is extrapolated linearly to 0 from beta_floor and
    2 * beta_floor (the bracket is smooth in gamma near the origin, so the
    Richardson step leaves an O(floor^2) error).  For a unit-variance
    Gaussian prior the limit is 1/2; for equiprobable discrete priors it
    vanishes.
    """
    upper = beta * _mean_internal_energy(dist, beta, beta, cfg, offset)
    lower = _boundary_lower_limit(dist, beta, cfg, offset)
    return -upper + lower, lower


def _boundary_lower_limit(dist, beta, cfg, offset):
    f1 = cfg.beta_floor
    b1 = f1 * _mean_internal_energy(dist, beta, f1, cfg, offset)
    b2 = 2.0 * f1 * _mean_internal_energy(dist, beta, 2.0 * f1, cfg, offset)
    return 2.0 * b1 - b2


def mi_thermo_classical(
    dist: InputDistribution,
    beta: float,
    cfg: QuadratureConfig,
    energy_offset: float = 0.0,
) -> MIResult:
    """Mutual information from the classical entropy balance (W = U).

    Exact only for equiprobable discrete priors; anywhere else it emits
    NonEquiprobablePriorWarning and returns the (finite, wrong) value the
    balance actually produces, with its divergent gamma -> 0 tail cut off
    at beta_floor.  Keeping the wrong number observable is the point: the
    generalized route exists because of it.
    """
    _check_target_beta(beta, cfg)
    if boltzmann.beta_dependent_energy(dist):
        warnings.warn(
            "classical entropy route on a prior with beta-dependent energy; result will be wrong",
            NonEquiprobablePriorWarning,
            stacklevel=2,
        )
        limit = None
    else:
        limit = _mean_internal_energy(dist, beta, 0.0, cfg, energy_offset)
    boundary, _ = _boundary_term(dist, beta, cfg, energy_offset)
    integral = integrate_beta(
        lambda g: _mean_internal_energy(dist, beta, g, cfg, energy_offset),
        0.0,
        beta,
        cfg,
        limit_at_zero=limit,
    )
    return MIResult(
        beta=beta,
        value_nats=boundary + integral,
        route=ROUTE_THERMO_CLASSICAL,
        boundary_term=boundary,
        integral_term=integral,
    )


def mi_thermo_generalized(
    dist: InputDistribution,
    beta: float,
    cfg: QuadratureConfig,
    energy_offset: float = 0.0,
) -> MIResult:
    """Mutual information from the generalized entropy balance.

    The integrand W = U + gamma E[dE/dgamma | y] is assembled before any
    quadrature sees it, so the integral is proper; see the module
    docstring.  For equiprobable discrete priors the correction term is
    identically zero and this coincides with the classical route.
    """
    _check_target_beta(beta, cfg)
    boundary, _ = _boundary_term(dist, beta, cfg, energy_offset)
    limit = _mean_generalized_integrand(dist, beta, 0.0, cfg, energy_offset)
    integral = integrate_beta(
        lambda g: _mean_generalized_integrand(dist, beta, g, cfg, energy_offset),
        0.0,
        beta,
        cfg,
        limit_at_zero=limit,
    )
    return MIResult(
        beta=beta,
        value_nats=boundary + integral,
        route=ROUTE_THERMO_GENERALIZED,
        boundary_term=boundary,
        integral_term=integral,
    )


def conditional_entropy(dist: InputDistribution, beta: float, cfg: QuadratureConfig) -> float:
    """H(X | Y) (discrete) or h(X | Y) (Gaussian) at inverse temperature beta.

    Shannon's identity I = H(X) - H(X | Y) ties this to the integration
    routes; the difference is checked in tests rather than assumed.
    """
    _check_target_beta(beta, cfg)
    if not dist.is_discrete:
        # The Gaussian posterior variance does not depend on y.
        return float(boltzmann.posterior_entropy(dist, 0.0, beta))
    return expect_output(dist, beta, lambda y: boltzmann.posterior_entropy(dist, y, beta), cfg)


def entropy_via_heat_capacity(
    dist: InputDistribution,
    y: float,
    beta: float,
    cfg: QuadratureConfig,
    s_infinity: float = 0.0,
) -> float:
    """Posterior entropy at (y, beta) recovered from the heat capacity.

    Integrates dS = gamma C_V dgamma down from infinite beta:

        S(beta) = s_infinity - integral_beta^inf gamma C_V(y; gamma) dgamma.

    s_infinity is the caller's entropy at zero temperature; it is 0 when
    the ground state is unique (any y != 0 for a +-1 alphabet) and must be
    supplied explicitly for degenerate observations such as y = 0, where
    the posterior never sharpens.  Only equiprobable discrete priors are
    accepted: this reconstruction rests on the classical balance, and a
    beta-dependent energy breaks it (NonEquiprobablePrior).
    """
    if boltzmann.beta_dependent_energy(dist):
        raise NonEquiprobablePrior("heat-capacity entropy reconstruction needs a uniform discrete prior")
    _check_target_beta(beta, cfg)
    tail = integrate_to_infinity(
        lambda g: g * boltzmann.heat_capacity(dist, y, g, cfg),
        beta,
        cfg,
    )
    return -tail + s_infinity


def mutual_information_parts_identity(result: MIResult) -> float:
    """Residual of value = boundary + integral; zero up to float roundoff."""
    return result.value_nats - (result.boundary_term + result.integral_term)


def entropy_gap_vs_route(dist: InputDistribution, beta: float, cfg: QuadratureConfig) -> float:
    """H(X) - H(X | Y) - I_generalized(beta); a cross-route consistency probe."""
    gap = prior_entropy(dist) - conditional_entropy(dist, beta, cfg)
    return gap - mi_thermo_generalized(dist, beta, cfg).value_nats


def _check_target_beta(beta: float, cfg: QuadratureConfig) -> None:
    if not math.isfinite(beta) or beta <= cfg.beta_floor:
        raise ValueError(f"target beta must be finite and exceed beta_floor = {cfg.beta_floor!r}, got {beta!r}")
