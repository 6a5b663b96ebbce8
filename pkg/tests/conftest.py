import numpy as np
import pytest

from pickpoly import FullModelParam, PickandsPoly, sample_feasible, theta_to_pickands


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def random_valid_pickands(rng: np.random.Generator, m: int, count: int) -> list[PickandsPoly]:
    """Random members of the degree-(m+2) polynomial Pickands space."""
    thetas = sample_feasible(m, rng, count)
    return [theta_to_pickands(FullModelParam(m, th)) for th in thetas]
