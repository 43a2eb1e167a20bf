import random

import pytest

from lamancount.engine import Memo


@pytest.fixture
def rng():
    return random.Random(20241015)


@pytest.fixture
def memo():
    return Memo()
