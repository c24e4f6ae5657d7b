"""Shared fixtures: the test families are cached for the whole session."""

import numpy as np
import pytest

from mvop.suites import family


@pytest.fixture(scope="session")
def hermite1():
    return family("hermite-1")


@pytest.fixture(scope="session")
def hermite2():
    return family("hermite-2")


@pytest.fixture(scope="session")
def hermite3():
    return family("hermite-3")


@pytest.fixture(scope="session")
def gauss2():
    return family("gauss-ladder-2")


@pytest.fixture(scope="session")
def gauss3():
    return family("gauss-ladder-3")


@pytest.fixture(scope="session")
def freud1():
    return family("freud-1")


@pytest.fixture(scope="session")
def freud2():
    return family("freud-2")


@pytest.fixture(scope="session")
def quartic_t1():
    return family("quartic-t1")


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)
