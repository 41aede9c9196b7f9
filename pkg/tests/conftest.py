"""Shared instance builders and helpers for the test suite."""

from __future__ import annotations

import pytest

from orientlight import (
    Graph,
    Matching,
    SplitMix64,
    eliminate_degree_one,
    random_graph,
    strip_isolated,
)


def complete_graph(k: int) -> Graph:
    return Graph(k, tuple((i, j) for i in range(k) for j in range(i + 1, k)))


def cycle_graph(k: int) -> Graph:
    return Graph(k, tuple((i, (i + 1) % k) for i in range(k)))


def path_graph(k: int) -> Graph:
    return Graph(k, tuple((i, i + 1) for i in range(k - 1)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


@pytest.fixture
def k3() -> Graph:
    return complete_graph(3)


@pytest.fixture
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture
def c4() -> Graph:
    return cycle_graph(4)


@pytest.fixture
def c5() -> Graph:
    return cycle_graph(5)


@pytest.fixture
def p2() -> Graph:
    return Graph(2, ((0, 1),))


@pytest.fixture
def star13() -> Graph:
    return star_graph(3)


def random_core(n: int, p: float, seed: int) -> Graph | None:
    """A random min-degree-2 graph, or None when the draw leaves no edges."""
    g = random_graph(n, p, seed)
    core, _ = strip_isolated(eliminate_degree_one(g).graph)
    return core if core.m else None


def random_maximal_matching(g: Graph, seed: int) -> Matching:
    """Greedy matching over a seeded shuffle of the edge ids."""
    order = list(range(g.m))
    SplitMix64(seed).shuffle(order)
    mate = [-1] * g.n
    ids = []
    for e in order:
        u, v = g.edges[e]
        if mate[u] == -1 and mate[v] == -1:
            mate[u] = v
            mate[v] = u
            ids.append(e)
    return Matching(frozenset(ids), tuple(mate))


def alternating_augmenting_path_exists(g: Graph, m: Matching) -> bool:
    """Exhaustive search for an augmenting path, independent of the engine.

    Explores every simple alternating path from every exposed vertex.
    Exponential, so only usable on small graphs; by Berge's theorem a
    matching is maximum iff this returns False.
    """
    mate = m.mate
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)

    def walk(v: int, visited: frozenset[int]) -> bool:
        # v is the current endpoint; the next step must use an unmatched edge
        for w in adj[v]:
            if w in visited or mate[v] == w:
                continue
            if mate[w] == -1:
                return True
            x = mate[w]
            if x in visited:
                continue
            if walk(x, visited | {w, x}):
                return True
        return False

    return any(walk(v, frozenset([v])) for v, w in enumerate(mate) if w == -1)
