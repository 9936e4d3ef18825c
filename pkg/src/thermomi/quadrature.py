"""Deterministic quadrature and differentiation primitives.

Three integral shapes cover everything the thermodynamic routes need:

1. Expectations against a Gaussian weight,  E[f(Y)] with Y ~ N(mean, var).
   These use Gauss-Hermite nodes: with tabulated (x_k, w_k) for weight
   exp(-x^2), substituting y = mean + sqrt(2 var) x gives

       E[f(Y)] = (1/sqrt(pi)) * sum_k w_k f(mean + sqrt(2 var) x_k),

   exact for polynomials of degree < 2n.  An adaptive-Simpson fallback over
   [mean - k sigma, mean + k sigma] is provided for integrands the fixed
   rule might misjudge; the two must agree to ~1e-8 on smooth inputs.

2. Integrals over the inverse-temperature axis, int_a^b g(gamma) dgamma,
   by adaptive Simpson seeded with a fixed panel count so node placement is
   deterministic.  A lower limit of exactly 0 is special: some integrands
   are only defined for gamma > 0, so the rule integrates from beta_floor
   upward and covers [0, beta_floor] with a single trapezoid panel using an
   analytic gamma -> 0 limit supplied by the caller (callers that know
   their integrand diverges at 0 pass None and accept the truncation).

3. Improper upper limits int_a^inf, by doubling the truncation point until
   both the integrand and the last segment's contribution are negligible.

Everything here is pure and deterministic: identical inputs give
bit-identical results, which the report writer relies on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_hermite

from .errors import ConfigError, NonFiniteIntegrand, NonFiniteValue, ToleranceNotReached

# Contribution threshold at which the improper-integral tail is declared dead.
TAIL_CHANGE_TOL = 1e-8
# Recursion cap for adaptive Simpson; hitting it above tolerance is an error.
MAX_DEPTH = 44


@dataclass(frozen=True)
class QuadratureConfig:
    """Shared numerical knobs.

    hermite_nodes        Gauss-Hermite node count for Gaussian-weight integrals.
    y_truncation_sigmas  half-width, in posterior-output sigmas, of the
                         adaptive fallback window.
    beta_grid_points     initial panel count seeding adaptive Simpson on the
                         inverse-temperature axis.
    beta_floor           lower truncation point standing in for gamma = 0.
    simpson_tol          absolute tolerance for adaptive Simpson.
    fd_step              step for central differences.
    """

    hermite_nodes: int = 128
    y_truncation_sigmas: float = 10.0
    beta_grid_points: int = 64
    beta_floor: float = 1e-6
    simpson_tol: float = 1e-10
    fd_step: float = 1e-3

    def __post_init__(self) -> None:
        if not isinstance(self.hermite_nodes, int) or self.hermite_nodes < 16:
            raise ConfigError(f"hermite_nodes must be an integer >= 16, got {self.hermite_nodes!r}")
        if not (3.0 <= float(self.y_truncation_sigmas) <= 40.0):
            raise ConfigError(f"y_truncation_sigmas must lie in [3, 40], got {self.y_truncation_sigmas!r}")
        if not isinstance(self.beta_grid_points, int) or self.beta_grid_points < 64:
            raise ConfigError(f"beta_grid_points must be an integer >= 64, got {self.beta_grid_points!r}")
        if not (0.0 < float(self.beta_floor) <= 1e-2):
            raise ConfigError(f"beta_floor must lie in (0, 1e-2], got {self.beta_floor!r}")
        if not (0.0 < float(self.simpson_tol) <= 1e-4):
            raise ConfigError(f"simpson_tol must lie in (0, 1e-4], got {self.simpson_tol!r}")
        if not (0.0 < float(self.fd_step) < 0.25):
            raise ConfigError(f"fd_step must lie in (0, 0.25), got {self.fd_step!r}")


@lru_cache(maxsize=16)
def _standard_normal_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes z_k and weights summing to 1 such that E[f(Z)] ~ sum w_k f(z_k).

    scipy's Golub-Welsch/asymptotic rule stays accurate for large n, where
    numpy.polynomial.hermite.hermgauss overflows.
    """
    x, w = roots_hermite(n)
    return math.sqrt(2.0) * x, w / math.sqrt(math.pi)


def integrate_gaussian_weight(
    f: Callable[[np.ndarray], np.ndarray],
    mean: float,
    variance: float,
    cfg: QuadratureConfig,
    method: str = "hermite",
) -> float:
    """E[f(Y)] for Y ~ N(mean, variance).

    ``f`` must accept an ndarray of evaluation points and return values of
    the same shape; NaN or infinity anywhere in the window raises
    NonFiniteIntegrand.  ``method`` selects "hermite" (default, fixed
    nodes) or "adaptive" (Simpson over the truncated support).
    """
    if variance <= 0.0 or not math.isfinite(variance) or not math.isfinite(mean):
        raise ValueError(f"need finite mean and positive variance, got N({mean!r}, {variance!r})")
    sigma = math.sqrt(variance)
    if method == "hermite":
        z, w = _standard_normal_rule(cfg.hermite_nodes)
        vals = np.asarray(f(mean + sigma * z), dtype=float)
        if vals.ndim == 0:
            vals = np.broadcast_to(vals, z.shape)
        if not np.all(np.isfinite(vals)):
            raise NonFiniteIntegrand("integrand returned a non-finite value on the Hermite nodes")
        return float(np.dot(w, vals))
    if method == "adaptive":
        half = cfg.y_truncation_sigmas * sigma
        norm = 1.0 / math.sqrt(2.0 * math.pi * variance)

        def weighted(y: float) -> float:
            v = float(np.asarray(f(np.asarray([y], dtype=float))).reshape(-1)[0])
            return v * norm * math.exp(-0.5 * (y - mean) ** 2 / variance)

        return _adaptive_simpson(weighted, mean - half, mean + half, cfg.simpson_tol, 32)
    raise ValueError(f"unknown method {method!r}")


def integrate_beta(
    g: Callable[[float], float],
    beta_lo: float,
    beta_hi: float,
    cfg: QuadratureConfig,
    *,
    limit_at_zero: float | None = None,
) -> float:
    """Integral of g over [beta_lo, beta_hi] on the inverse-temperature axis.

    A lower limit of exactly 0 is replaced by cfg.beta_floor; the sliver
    [0, beta_floor] is then covered by one trapezoid panel using
    ``limit_at_zero`` as the analytic value of g at 0, or skipped when the
    caller passes None because g diverges there (the result is then a
    deliberate truncation of an improper integral).
    """
    if beta_lo < 0.0 or not math.isfinite(beta_lo):
        raise ValueError(f"beta_lo must be finite and >= 0, got {beta_lo!r}")
    if not math.isfinite(beta_hi) or beta_hi <= beta_lo:
        raise ValueError(f"beta_hi must be finite and exceed beta_lo, got {beta_hi!r}")
    sliver = 0.0
    lo = beta_lo
    if beta_lo == 0.0:
        lo = cfg.beta_floor
        if beta_hi <= lo:
            raise ValueError(f"beta_hi {beta_hi!r} must exceed beta_floor {lo!r}")
        if limit_at_zero is not None:
            g_floor = _checked_eval(g, lo)
            sliver = 0.5 * (float(limit_at_zero) + g_floor) * lo
    return _adaptive_simpson(g, lo, beta_hi, cfg.simpson_tol, cfg.beta_grid_points) + sliver


def integrate_to_infinity(g: Callable[[float], float], beta_lo: float, cfg: QuadratureConfig) -> float:
    """Improper integral of g over [beta_lo, inf).

    The truncation point doubles until the last segment contributes less
    than TAIL_CHANGE_TOL and the integrand itself has fallen below
    simpson_tol; integrands that refuse to decay raise ToleranceNotReached.
    """
    if beta_lo <= 0.0 or not math.isfinite(beta_lo):
        raise ValueError(f"beta_lo must be finite and > 0, got {beta_lo!r}")
    pieces = []
    lo = beta_lo
    hi = max(2.0 * beta_lo, 8.0)
    for _ in range(64):
        seg = _adaptive_simpson(g, lo, hi, cfg.simpson_tol, cfg.beta_grid_points)
        pieces.append(seg)
        if abs(seg) < TAIL_CHANGE_TOL and abs(_checked_eval(g, hi)) < cfg.simpson_tol:
            return math.fsum(pieces)
        lo, hi = hi, 2.0 * hi
    raise ToleranceNotReached(f"tail of improper integral still alive at beta = {lo!r}")


def central_difference(h: Callable[[float], float], at: float, step: float) -> float:
    """Symmetric two-point estimate of dh/dx at ``at``; error is O(step^2)."""
    if step <= 0.0 or not math.isfinite(step):
        raise ValueError(f"step must be finite and > 0, got {step!r}")
    if at - step <= 0.0:
        raise ValueError(f"stencil would cross zero: at={at!r}, step={step!r}")
    hi = h(at + step)
    lo = h(at - step)
    out = (hi - lo) / (2.0 * step)
    if not math.isfinite(out):
        raise NonFiniteValue(f"central difference at {at!r} produced {out!r}")
    return out


def _checked_eval(g: Callable[[float], float], x: float) -> float:
    v = float(g(x))
    if not math.isfinite(v):
        raise NonFiniteIntegrand(f"integrand returned {v!r} at {x!r}")
    return v


def _adaptive_simpson(
    g: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    initial_panels: int,
) -> float:
    """Adaptive Simpson with a fixed initial partition.

    The interval is first split into ``initial_panels`` equal panels; each
    panel is then refined by bisection until its Richardson error estimate
    |S_fine - S_coarse| / 15 fits its width-proportional share of ``tol``.
    Panel sums are accumulated with math.fsum so the result does not depend
    on float association order.
    """
    edges = np.linspace(a, b, initial_panels + 1)
    fvals = [_checked_eval(g, x) for x in edges]
    pieces = []
    scale = b - a
    for i in range(initial_panels):
        x0, x2 = float(edges[i]), float(edges[i + 1])
        m = 0.5 * (x0 + x2)
        fm = _checked_eval(g, m)
        whole = (x2 - x0) / 6.0 * (fvals[i] + 4.0 * fm + fvals[i + 1])
        pieces.append(
            _refine_panel(g, x0, x2, fvals[i], fm, fvals[i + 1], whole, tol * (x2 - x0) / scale, MAX_DEPTH)
        )
    return math.fsum(pieces)


def _refine_panel(g, x0, x2, f0, fm, f2, whole, tol, depth):
    m = 0.5 * (x0 + x2)
    lm = 0.5 * (x0 + m)
    rm = 0.5 * (m + x2)
    flm = _checked_eval(g, lm)
    frm = _checked_eval(g, rm)
    left = (m - x0) / 6.0 * (f0 + 4.0 * flm + fm)
    right = (x2 - m) / 6.0 * (fm + 4.0 * frm + f2)
    err = left + right - whole
    if abs(err) <= 15.0 * tol:
        return left + right + err / 15.0
    if depth <= 0:
        # Below this floor the discrepancy is plain roundoff, not structure.
        floor = 64.0 * np.finfo(float).eps * (abs(left) + abs(right) + 1e-300)
        if abs(err) <= floor:
            return left + right + err / 15.0
        raise ToleranceNotReached(
            f"adaptive Simpson stalled on [{x0!r}, {x2!r}] with error estimate {abs(err) / 15.0:.3e}"
        )
    return _refine_panel(g, x0, m, f0, flm, fm, left, 0.5 * tol, depth - 1) + _refine_panel(
        g, m, x2, fm, frm, f2, right, 0.5 * tol, depth - 1
    )
