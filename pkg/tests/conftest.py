import numpy as np
import pytest

from deepvote.datasets import example_election


@pytest.fixture
def example():
    return example_election()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
