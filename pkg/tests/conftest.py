import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from coordgame.catalogue import build_census


@pytest.fixture(scope="session")
def census7():
    """Full census up to order 7, shared by the acceptance criteria."""
    workers = min(8, os.cpu_count() or 1)
    return build_census(7, workers=workers)
