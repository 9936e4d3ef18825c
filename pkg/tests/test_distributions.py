import math

import numpy as np
import pytest

from thermomi import (
    AtomNotFound,
    DuplicateAtom,
    InputDistribution,
    NonPositiveProbability,
    NonPositiveVariance,
    NotNormalized,
    TooFewAtoms,
    from_dict,
    make_discrete,
    make_gaussian,
    prior_entropy,
    prior_log_prob,
    prior_mean,
    prior_variance,
    second_moment,
)


def test_discrete_sorted_and_normalized():
    d = make_discrete([(2.0, 0.25), (-1.0, 0.5), (0.5, 0.25)])
    assert [v for v, _ in d.atoms] == [-1.0, 0.5, 2.0]
    assert math.fsum(p for _, p in d.atoms) == pytest.approx(1.0, abs=0)


def test_discrete_moments(bernoulli, bernoulli_tilted):
    assert prior_mean(bernoulli) == 0.0
    assert prior_variance(bernoulli) == 1.0
    assert second_moment(bernoulli) == 1.0
    # mean 0.5, var 1 - 0.25
    assert prior_mean(bernoulli_tilted) == pytest.approx(0.5)
    assert prior_variance(bernoulli_tilted) == pytest.approx(0.75)


def test_gaussian_moments(gauss_shifted):
    assert prior_mean(gauss_shifted) == 1.5
    assert prior_variance(gauss_shifted) == 2.0
    assert second_moment(gauss_shifted) == pytest.approx(2.0 + 1.5**2)


def test_equiprobable_flag(bernoulli, bernoulli_tilted):
    assert bernoulli.is_equiprobable
    assert not bernoulli_tilted.is_equiprobable


def test_renormalizes_tiny_drift():
    eps = 2e-10  # inside the renormalization band, outside exact equality
    d = make_discrete([(-1.0, 0.5), (1.0, 0.5 + eps)])
    assert math.fsum(d.probs.tolist()) == pytest.approx(1.0, abs=1e-15)


def test_rejects_bad_atoms():
    with pytest.raises(TooFewAtoms):
        make_discrete([(1.0, 1.0)])
    with pytest.raises(NonPositiveProbability):
        make_discrete([(-1.0, 0.0), (1.0, 1.0)])
    with pytest.raises(NonPositiveProbability):
        make_discrete([(-1.0, -0.1), (1.0, 1.1)])
    with pytest.raises(DuplicateAtom):
        make_discrete([(1.0, 0.5), (1.0, 0.5)])
    with pytest.raises(NotNormalized):
        make_discrete([(-1.0, 0.3), (1.0, 0.3)])


def test_rejects_bad_gaussian():
    with pytest.raises(NonPositiveVariance):
        make_gaussian(0.0, 0.0)
    with pytest.raises(NonPositiveVariance):
        make_gaussian(0.0, -1.0)
    with pytest.raises(NonPositiveVariance):
        make_gaussian(0.0, math.inf)


def test_log_prob_lookup(bernoulli_tilted):
    assert prior_log_prob(bernoulli_tilted, 1.0) == pytest.approx(math.log(0.75))
    assert prior_log_prob(bernoulli_tilted, -1.0) == pytest.approx(math.log(0.25))
    with pytest.raises(AtomNotFound):
        prior_log_prob(bernoulli_tilted, 0.5)


def test_entropy(bernoulli, bernoulli_tilted, gauss_std):
    assert prior_entropy(bernoulli) == pytest.approx(math.log(2.0))
    h = -(0.25 * math.log(0.25) + 0.75 * math.log(0.75))
    assert prior_entropy(bernoulli_tilted) == pytest.approx(h)
    assert prior_entropy(gauss_std) == pytest.approx(0.5 * math.log(2.0 * math.pi * math.e))


def test_dict_round_trip(bernoulli_tilted, gauss_shifted):
    for d in (bernoulli_tilted, gauss_shifted):
        again = from_dict(d.to_dict())
        assert again == d


def test_from_dict_rejects_unknown_kind():
    with pytest.raises(ValueError):
        from_dict({"kind": "cauchy"})


@pytest.mark.parametrize("n_atoms", [2, 3, 7, 31])
def test_random_discrete_moment_identities(n_atoms):
    # var == E[X^2] - mean^2 must hold for any valid atom set
    rng = np.random.default_rng(1234 + n_atoms)
    values = np.sort(rng.normal(size=n_atoms) * 3.0)
    probs = rng.dirichlet(np.ones(n_atoms))
    d = make_discrete(list(zip(values.tolist(), probs.tolist())))
    assert isinstance(d, InputDistribution)
    assert prior_variance(d) == pytest.approx(second_moment(d) - prior_mean(d) ** 2, abs=1e-12)
    assert prior_entropy(d) <= math.log(n_atoms) + 1e-12
