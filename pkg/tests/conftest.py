import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402

from entrobound import pure_state, validate_measurement  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def disc_m():
    return validate_measurement(oracles.disc_m(), "POVM")


@pytest.fixture(scope="session")
def disc_n():
    return validate_measurement(oracles.disc_n(), "PVM")


@pytest.fixture(scope="session")
def psi1():
    return pure_state(oracles.E0)


@pytest.fixture(scope="session")
def psi2():
    return pure_state((oracles.E0 + oracles.E1) / oracles.R2)


@pytest.fixture(scope="session")
def phi3():
    return pure_state(oracles.disc_phi3())
