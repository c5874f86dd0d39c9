"""Shared fixtures: the 3-node counter-example and reusable random generators."""

from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import settings

from szapsp import Graph, WeightMatrix

settings.register_profile("default", deadline=None)
settings.load_profile("default")

GOLDEN_DIR = Path(__file__).parent / "golden"

# The bug-witness graph: edges 1-2 cost 2 and 1-3 cost 4.
G_PRIME = Graph(n=3, edges=((0, 1, 2), (0, 2, 4)))

# What the published finisher returns for it (wrong), and the true distances.
DELTA_PUBLISHED = WeightMatrix([[4, 6, 0], [6, 4, -2], [0, -2, 4]])
DELTA_TRUE = WeightMatrix([[0, 2, 4], [2, 0, 6], [4, 6, 0]])


@pytest.fixture
def g_prime() -> Graph:
    return G_PRIME


@pytest.fixture
def g_prime_path() -> Path:
    return GOLDEN_DIR / "g_prime.gr"


def random_weight_matrix(
    rng: random.Random,
    n: int,
    lo: int = -16,
    hi: int = 32,
    inf_prob: float = 0.3,
) -> WeightMatrix:
    from szapsp import INF

    return WeightMatrix(
        [
            [INF if rng.random() < inf_prob else rng.randint(lo, hi) for _ in range(n)]
            for _ in range(n)
        ]
    )


def connected_corpus(count: int, seed_base: int = 90_000):
    """Deterministic stream of (graph, max_cost) spanning n in 1..64, W in 1..16."""
    from szapsp import random_connected

    out = []
    for i in range(count):
        n = (i % 64) + 1
        w = (i % 16) + 1
        p = min(1.0, 0.25 + 4.5 / max(n, 1))
        out.append(random_connected(n, w, p, seed=seed_base + i))
    return out
