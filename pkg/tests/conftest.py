import math

import numpy as np
import pytest

from rnlab import build_graph, gen_binary_tree, gen_cycle, gen_grid, gen_path

LN2 = math.log(2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)


@pytest.fixture
def p3_uniform():
    return gen_path(3)


@pytest.fixture
def c6_uniform():
    return gen_cycle(6)


@pytest.fixture
def grid4():
    return gen_grid(4, 4)


@pytest.fixture
def critical_tree():
    return gen_binary_tree(8, LN2)


@pytest.fixture
def weighted_p3():
    # p = (0.5, 0.2, 0.3) up to normalization
    lw = [math.log(5.0), math.log(2.0), math.log(3.0)]
    return build_graph([(0, 1), (1, 2)], lw, d=2, K=3.0)
