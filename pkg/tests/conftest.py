import pytest
from mpmath import mp

from keplevin import debye

mp.dps = 250


@pytest.fixture(scope="session")
def small_table():
    return debye.generate(12)


@pytest.fixture(scope="session")
def big_table():
    # covers the deepest golden table (k = 105) and every scan in the suite
    return debye.generate(110)
