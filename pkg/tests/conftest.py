import pytest

from services.constants import electron, guided_photon
from settings import get_settings

REFERENCE_CUTOFF = 9.49e9


@pytest.fixture(autouse=True, scope="session")
def testing_environment():
    """Run the whole suite against TestingSettings"""
    with pytest.MonkeyPatch.context() as mp:
        mp.setenv("ENVIRONMENT", "testing")
        get_settings.cache_clear()
        yield
    get_settings.cache_clear()


@pytest.fixture
def electron_particle():
    """The electron as a MassiveParticle"""
    return electron()


@pytest.fixture
def guided():
    """Guided photon for the 9.49e9 rad/s reference cutoff"""
    return guided_photon(REFERENCE_CUTOFF)
