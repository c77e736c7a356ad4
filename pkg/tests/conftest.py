from __future__ import annotations

import random
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from distspec import Digraph, Graph, all_pairs_distances, enumerate_connected_graphs, enumerate_trees

settings.register_profile("repo", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@lru_cache(maxsize=None)
def connected(n: int) -> tuple[Graph, ...]:
    return tuple(enumerate_connected_graphs(n))


@lru_cache(maxsize=None)
def trees(n: int) -> tuple[Graph, ...]:
    return tuple(enumerate_trees(n))


def up_to(n_max: int, n_min: int = 1):
    for n in range(n_min, n_max + 1):
        yield from connected(n)


def random_connected_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    """Random spanning tree plus independent extra edges."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, edges)


def random_strong_digraph(rng: random.Random, n: int, p: float = 0.3) -> Digraph:
    """Random Hamiltonian dicycle plus independent extra arcs."""
    order = list(range(n))
    rng.shuffle(order)
    arcs = {(order[i], order[(i + 1) % n]) for i in range(n)}
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                arcs.add((u, v))
    return Digraph.from_arcs(n, arcs)


def d4() -> Digraph:
    """The transmission-regular digraph whose distance matrix has rows
    (0,1,2,1), (1,0,1,2), (1,1,0,2), (1,2,1,0)."""
    dist = [[0, 1, 2, 1], [1, 0, 1, 2], [1, 1, 0, 2], [1, 2, 1, 0]]
    return Digraph.from_arcs(4, [(i, j) for i in range(4) for j in range(4) if dist[i][j] == 1])


@pytest.fixture(scope="session")
def rng() -> random.Random:
    return random.Random(20240229)


@pytest.fixture(scope="session")
def infos8():
    return {n: [all_pairs_distances(g) for g in connected(n)] for n in range(2, 9)}
