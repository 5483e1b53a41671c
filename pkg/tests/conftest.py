import math

import pytest
from hypothesis import HealthCheck, settings

from tfsynth.biphoton import SimplifiedJsaParams, SuperpositionParams, jsa_simplified, two_mode_jsa
from tfsynth.grid import make_axis

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

NOMINAL = SimplifiedJsaParams(0.11284, 13.888)


@pytest.fixture(scope="session")
def freq_axis():
    return make_axis(512, 0.0, 16.0, "frequency")


@pytest.fixture(scope="session")
def single_jsa(freq_axis):
    return jsa_simplified(NOMINAL, freq_axis)


@pytest.fixture(scope="session")
def anti_jsa_wide(freq_axis):
    return two_mode_jsa(NOMINAL, SuperpositionParams(0.4237, math.pi), freq_axis)
