import pytest

from rvvfuzz.catalog import build_listing
from rvvfuzz.intrinsics import parse_definitions


@pytest.fixture(scope="session")
def catalog_listing():
    return build_listing()


@pytest.fixture(scope="session")
def catalog_defs(catalog_listing):
    return parse_definitions(catalog_listing)
