import pytest

from mulshift.congruence import build_system
from mulshift.multfunc import BUILTIN_FUNCTIONS


@pytest.fixture
def sigma():
    return BUILTIN_FUNCTIONS['sigma_over_n']


@pytest.fixture
def n_over_phi():
    return BUILTIN_FUNCTIONS['n_over_phi']


@pytest.fixture
def phi_over_n():
    return BUILTIN_FUNCTIONS['phi_over_n']


@pytest.fixture
def small_system():
    """K = 6, a = (5, 7): N = 28229 mod 44100."""
    return build_system(6, [5, 7])


@pytest.fixture
def sigma_system():
    """The system sigma(n)/n builds for the box centred at (2, 1) with nu = 2."""
    return build_system(6, [11, 13])
