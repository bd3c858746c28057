import pytest

from ecomu3.groups import standard_modules, symmetric_group
from ecomu3.resolution import free_resolution


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return str(tmp_path_factory.mktemp("resolution-cache"))


@pytest.fixture(scope="session")
def resolution(cache_dir):
    """The shared length-15 resolution over the symmetric group on 3 letters."""
    return free_resolution(symmetric_group(3), 15, cache_dir=cache_dir)


@pytest.fixture(scope="session")
def catalog():
    return standard_modules(3)
