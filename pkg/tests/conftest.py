import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from schromax import space


@pytest.fixture(scope="session")
def h3():
    return space.hyperbolic_h3()


@pytest.fixture(scope="session")
def dr21():
    return space.damek_ricci(2, 1)


@pytest.fixture(scope="session")
def dr43():
    return space.damek_ricci(4, 3)


@pytest.fixture(scope="session")
def geometries(h3, dr21, dr43):
    return [h3, dr21, dr43]
