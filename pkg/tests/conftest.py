import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ddpgroups import build_group  # noqa: E402


@pytest.fixture(scope="session")
def z12():
    return build_group("Z12")


@pytest.fixture(scope="session")
def d5():
    return build_group("D5")


@pytest.fixture(scope="session")
def heis3():
    return build_group("Heis3")


@pytest.fixture(scope="session")
def a4():
    return build_group("Perm[(0 1 2);(0 1)(2 3)]")


MUTTERAKKORD = [0, 11, 7, 4, 2, 9, 3, 8, 10, 1, 5, 6]
GRANDMOTHER = [0, 11, 1, 10, 2, 9, 3, 8, 4, 7, 5, 6]
D5_SEQUENCE = "1,a,a^3,ba^3,a^2,b,a^4,ba^4,ba^2,ba"
D5_DIVISORS = "1,a,a^2,ba,b,ba^2,ba^4,ba^3,a^3,a^4"
ORDER21_SEQUENCE = ("1,a,ba^6,ba^2,a^3,a^5,b,b^2a^4,ba^4,b^2a^2,ba^5,ba^3,a^6,"
                    "b^2a^3,ba,b^2,b^2a^6,a^2,b^2a,b^2a^5,a^4")
ORDER21_DIVISORS = ("1,a,ba^2,a^3,b^2a^6,a^2,ba,ba^4,b^2a^3,b,b^2a,a^5,b^2,"
                    "b^2a^5,b^2a^2,ba^3,a^6,ba^6,b^2a^4,a^4,ba^5")
