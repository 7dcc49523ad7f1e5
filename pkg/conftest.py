import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from lcsc_core import nx_zmod, z_nx

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=10, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

TABLES = Path(__file__).parent / "tables"


@pytest.fixture
def nx6():
    return nx_zmod(6)


@pytest.fixture
def znx():
    return z_nx()


@pytest.fixture
def tables_dir():
    return TABLES
