"""Shared fixtures: services wired with default settings and small rings."""
import os
import sys

import pytest

# Add project root to path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from anderson_lab.core.config import Settings  # noqa: E402
from anderson_lab.services.gaussian_service import GaussianService  # noqa: E402
from anderson_lab.services.localization_service import LocalizationService  # noqa: E402
from anderson_lab.services.poly_service import PolyService  # noqa: E402
from anderson_lab.services.ring_service import RingService  # noqa: E402
from anderson_lab.services.spectrum_service import SpectrumService  # noqa: E402
from anderson_lab.services.theorem_service import TheoremService  # noqa: E402
from anderson_lab.utils.parse_utils import parse_ring  # noqa: E402


@pytest.fixture(scope="session")
def config():
    return Settings()


@pytest.fixture(scope="session")
def ring_service(config):
    return RingService(cap=config.ring_cap)


@pytest.fixture(scope="session")
def poly_service(ring_service):
    return PolyService(ring_service)


@pytest.fixture(scope="session")
def localization_service(poly_service, config):
    return LocalizationService(poly_service, config)


@pytest.fixture(scope="session")
def spectrum_service(ring_service, poly_service, localization_service, config):
    return SpectrumService(ring_service, poly_service, localization_service, config)


@pytest.fixture(scope="session")
def theorem_service(ring_service, poly_service, spectrum_service, config):
    return TheoremService(ring_service, poly_service, spectrum_service, config)


@pytest.fixture(scope="session")
def gaussian_service(ring_service, poly_service, config):
    return GaussianService(ring_service, poly_service, config)


@pytest.fixture
def z4():
    return parse_ring("Z4")


@pytest.fixture
def z5():
    return parse_ring("Z5")


@pytest.fixture
def z6():
    return parse_ring("Z6")


@pytest.fixture
def z12():
    return parse_ring("Z12")


@pytest.fixture
def z2xz3():
    return parse_ring("Z2xZ3")
