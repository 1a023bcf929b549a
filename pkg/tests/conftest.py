import pytest

from riskscale.repro import hyperexp2, hyperexp3, oscillating_model, reference_exponential


@pytest.fixture(scope="session")
def h2_model():
    return hyperexp2()


@pytest.fixture(scope="session")
def h3_model():
    return hyperexp3()


@pytest.fixture(scope="session")
def osc_model():
    return oscillating_model()


@pytest.fixture(scope="session")
def exp_model():
    return reference_exponential()
