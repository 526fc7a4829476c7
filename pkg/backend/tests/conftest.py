import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from services.fs_family import build  # noqa: E402
from services.matchings import MatchingType, enumerate_perfect_matchings, type_of  # noqa: E402
from services.two_factor import complement_two_factor  # noqa: E402


def two_cycle_matchings(j, k):
    """Type-1 matchings of FS(j,k) whose complement has two cycles."""
    found = []
    for m in enumerate_perfect_matchings(build(j, k)):
        if type_of(m) == MatchingType.TYPE1 and len(complement_two_factor(m).cycles) == 2:
            found.append(m)
    return found


@pytest.fixture
def snark5_two_cycle():
    """First type-1 matching of FS(2,5); every 2-factor there has two cycles."""
    return two_cycle_matchings(2, 5)[0]


@pytest.fixture
def two_cycle():
    return two_cycle_matchings
