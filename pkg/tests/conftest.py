import pytest

from thermomi import QuadratureConfig, make_discrete, make_gaussian


@pytest.fixture(scope="session")
def cfg() -> QuadratureConfig:
    return QuadratureConfig()


@pytest.fixture(scope="session")
def bernoulli():
    """Uniform +-1 input, the workhorse discrete prior."""
    return make_discrete([(-1.0, 0.5), (1.0, 0.5)])


@pytest.fixture(scope="session")
def bernoulli_tilted():
    """Non-equiprobable +-1 input; its energy keeps a 1/beta term."""
    return make_discrete([(-1.0, 0.25), (1.0, 0.75)])


@pytest.fixture(scope="session")
def gauss_std():
    return make_gaussian(0.0, 1.0)


@pytest.fixture(scope="session")
def gauss_shifted():
    return make_gaussian(1.5, 2.0)
