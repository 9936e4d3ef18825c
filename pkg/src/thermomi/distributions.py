"""Channel input distributions.

Two prior families are supported: a finite set of point masses
("discrete") and a Gaussian.  Both are consumed by the Boltzmann-posterior
machinery, which only ever needs log-masses, moments, and entropies, so the
representation here stays deliberately small.

All entropies are in nats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    AtomNotFound,
    DuplicateAtom,
    InvalidPrior,
    NonPositiveProbability,
    NonPositiveVariance,
    NotNormalized,
    TooFewAtoms,
)

DISCRETE = "discrete"
GAUSSIAN = "gaussian"

# Probability sums further than this from 1 are rejected instead of repaired.
RENORMALIZE_TOL = 1e-9
# Value matching tolerance for atom lookups.
ATOM_MATCH_TOL = 1e-12


@dataclass(frozen=True)
class InputDistribution:
    """Validated channel input prior.

    ``atoms`` holds (value, probability) pairs sorted by value for the
    discrete kind and is None for the Gaussian kind; ``mean``/``variance``
    are None for the discrete kind.  Build instances through
    :func:`make_discrete` or :func:`make_gaussian`, never directly.
    """

    kind: str
    atoms: tuple[tuple[float, float], ...] | None = None
    mean: float | None = None
    variance: float | None = None

    @property
    def is_discrete(self) -> bool:
        return self.kind == DISCRETE

    @cached_property
    def values(self) -> np.ndarray:
        """Atom values as an array (discrete only)."""
        if not self.is_discrete:
            raise InvalidPrior("values are only defined for discrete priors")
        return np.array([v for v, _ in self.atoms])

    @cached_property
    def probs(self) -> np.ndarray:
        """Atom probabilities as an array (discrete only)."""
        if not self.is_discrete:
            raise InvalidPrior("probs are only defined for discrete priors")
        return np.array([p for _, p in self.atoms])

    @cached_property
    def is_equiprobable(self) -> bool:
        """True for discrete priors whose atoms all share one probability."""
        if not self.is_discrete:
            return False
        p = self.probs
        return float(p.max() - p.min()) < 1e-12

    def to_dict(self) -> dict:
        """JSON-friendly form, inverse of :func:`from_dict`."""
        if self.is_discrete:
            return {"kind": DISCRETE, "atoms": [[v, p] for v, p in self.atoms]}
        return {"kind": GAUSSIAN, "mean": self.mean, "variance": self.variance}


def make_discrete(atoms) -> InputDistribution:
    """Build a discrete prior from (value, probability) pairs.

    Probabilities must be strictly positive and sum to 1 within 1e-12 after
    an optional renormalization: drifts below 1e-9 (for example from rounded
    config files) are silently repaired, anything larger raises
    NotNormalized.  Atom values must be pairwise distinct and there must be
    at least two of them, otherwise the channel carries no information.
    """
    pairs = [(float(v), float(p)) for v, p in atoms]
    if len(pairs) < 2:
        raise TooFewAtoms(f"need at least 2 atoms, got {len(pairs)}")
    for v, p in pairs:
        if not math.isfinite(v):
            raise InvalidPrior(f"atom value {v!r} is not finite")
        if not math.isfinite(p) or p <= 0.0 or p > 1.0:
            raise NonPositiveProbability(f"atom ({v}, {p}): probability must lie in (0, 1]")
    pairs.sort(key=lambda vp: vp[0])
    for (v0, _), (v1, _) in zip(pairs, pairs[1:]):
        if v0 == v1:
            raise DuplicateAtom(f"atom value {v0} appears more than once")
    total = math.fsum(p for _, p in pairs)
    if abs(total - 1.0) >= RENORMALIZE_TOL:
        raise NotNormalized(f"probabilities sum to {total!r}, further than {RENORMALIZE_TOL} from 1")
    if abs(total - 1.0) > 4 * np.finfo(float).eps:
        pairs = [(v, p / total) for v, p in pairs]
    return InputDistribution(kind=DISCRETE, atoms=tuple(pairs))


def make_gaussian(mean: float, variance: float) -> InputDistribution:
    """Build a Gaussian prior with the given mean and variance."""
    mean = float(mean)
    variance = float(variance)
    if not math.isfinite(mean):
        raise InvalidPrior(f"mean {mean!r} is not finite")
    if not math.isfinite(variance) or variance <= 0.0:
        raise NonPositiveVariance(f"variance must be strictly positive and finite, got {variance!r}")
    return InputDistribution(kind=GAUSSIAN, mean=mean, variance=variance)


def from_dict(spec: dict) -> InputDistribution:
    """Parse the JSON prior schema used by config files and report headers."""
    kind = spec.get("kind")
    if kind == DISCRETE:
        if "atoms" not in spec:
            raise InvalidPrior("discrete prior needs an 'atoms' list")
        return make_discrete(spec["atoms"])
    if kind == GAUSSIAN:
        if "mean" not in spec or "variance" not in spec:
            raise InvalidPrior("gaussian prior needs 'mean' and 'variance'")
        return make_gaussian(spec["mean"], spec["variance"])
    raise InvalidPrior(f"unknown prior kind {kind!r}")


def prior_mean(dist: InputDistribution) -> float:
    """First moment of the prior."""
    if dist.is_discrete:
        return float(np.dot(dist.probs, dist.values))
    return dist.mean


def second_moment(dist: InputDistribution) -> float:
    """E[X^2] under the prior.  For a Gaussian this is mean^2 + variance."""
    if dist.is_discrete:
        return float(np.dot(dist.probs, dist.values**2))
    return dist.mean * dist.mean + dist.variance


def prior_variance(dist: InputDistribution) -> float:
    """Var(X) under the prior."""
    if dist.is_discrete:
        m = prior_mean(dist)
        return float(np.dot(dist.probs, (dist.values - m) ** 2))
    return dist.variance


def prior_log_prob(dist: InputDistribution, x: float) -> float:
    """log P(x) for an atom, or the Gaussian log-density at x.

    For discrete priors x must match an atom value within 1e-12; anything
    else raises AtomNotFound rather than returning -inf, since a silent
    -inf usually means a caller mixed up supports.
    """
    if dist.is_discrete:
        deltas = np.abs(dist.values - x)
        i = int(np.argmin(deltas))
        if deltas[i] <= ATOM_MATCH_TOL * max(1.0, abs(x)):
            return float(np.log(dist.probs[i]))
        raise AtomNotFound(f"{x!r} is not an atom of the discrete prior")
    z = (x - dist.mean) ** 2 / dist.variance
    return -0.5 * (z + math.log(2.0 * math.pi * dist.variance))


def prior_entropy(dist: InputDistribution) -> float:
    """Shannon entropy (discrete) or differential entropy (Gaussian), nats."""
    if dist.is_discrete:
        p = dist.probs
        return float(-np.dot(p, np.log(p)))
    return 0.5 * math.log(2.0 * math.pi * math.e * dist.variance)
