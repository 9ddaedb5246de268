import random

import pytest

from rsclifford.spaces import MonogenicBasis


@pytest.fixture(scope="session")
def basis31():
    return MonogenicBasis.build(3, 1)


@pytest.fixture
def rng():
    return random.Random(1234)
