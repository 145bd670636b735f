import random

import pytest

from considerate.game import GameInstance
from considerate.generate import gen_random, random_graph
from considerate.social import SocialGraph
from considerate.solver import greedy_nash, is_nash


@pytest.fixture
def trio():
    """Three players, two resources, d(x) = x on both."""
    return GameInstance.identical(3, 2)


@pytest.fixture
def k3():
    return SocialGraph.from_cliques(3, [(0, 1, 2)])


GRAPH_SPECS = ["empty", "gnp:0.3", "gnp:0.5", "gnp:0.8", "cliques:2", "cliques:3"]


def tie_heavy_instance(seed, max_n=8, max_m=4):
    """Small instance with many equal delays so that equilibria are fragile."""
    rng = random.Random(seed)
    n = rng.randint(2, max_n)
    m = rng.randint(2, max_m)
    spec = GRAPH_SPECS[seed % len(GRAPH_SPECS)]
    if rng.random() < 0.5:
        instance, graph = gen_random(n, m, rng.randint(n, n + 3), spec, seed)
    else:
        instance = GameInstance.identical(n, m)
        graph = random_graph(n, spec, rng)
    return instance, graph, rng


def perturbed_nash(instance, rng, rounds=6):
    """Greedy NE followed by load-preserving swaps and NE-preserving single moves."""
    n, m = instance.n, instance.m
    s = list(greedy_nash(instance, rng.sample(range(n), n)))
    for _ in range(rng.randint(0, rounds)):
        i, j = rng.randrange(n), rng.randrange(n)
        s[i], s[j] = s[j], s[i]
        i = rng.randrange(n)
        old = s[i]
        s[i] = rng.randrange(m)
        if not is_nash(instance, s):
            s[i] = old
    return tuple(s)
