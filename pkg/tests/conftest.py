import random

import pytest


@pytest.fixture
def rng():
    return random.Random(0xC00)


def random_text(rng: random.Random, n: int, sigma: int = 2) -> bytes:
    return bytes(97 + rng.randrange(sigma) for _ in range(n))
