import pytest

from missingdigit import PrimeTables


@pytest.fixture(scope="session")
def tables():
    """Shared table comfortably past every unit-test range (incl. 7^6)."""
    return PrimeTables(200_000)
