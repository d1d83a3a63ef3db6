import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from closedbch import build_algebra

settings.register_profile("default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def sl2():
    return build_algebra("sl2")


@pytest.fixture(scope="session")
def sl3():
    return build_algebra("sl3")


@pytest.fixture(scope="session")
def so5():
    return build_algebra("so5")


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def crandom(rng, radius=1.0, size=None):
    """Uniform samples in the complex disk of the given radius."""
    r = radius * np.sqrt(rng.uniform(0, 1, size))
    t = rng.uniform(0, 2 * np.pi, size)
    return r * np.exp(1j * t)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep
