"""Shared test utilities: seeded instance factories and naive references."""

from __future__ import annotations

import random
from itertools import combinations

from tbi.core import (
    InfluenceNetwork,
    clique_network,
    general_network,
    path_network,
    tree_network,
    verify_solution,
)


def random_tree_edges(rng: random.Random, n: int) -> list[tuple[int, int]]:
    """Uniform random attachment: node v picks a parent among 0..v-1."""
    return [(rng.randrange(v), v) for v in range(1, n)]


def degrees_of(n: int, edges) -> list[int]:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def random_path_instance(rng: random.Random, n: int, lam: int) -> InfluenceNetwork:
    t = [1] + [rng.randint(1, 2) for _ in range(n - 2)] + [1]
    return path_network(t, lam)


def random_clique_instance(rng: random.Random, n: int, lam: int) -> InfluenceNetwork:
    return clique_network([rng.randint(1, n - 1) for _ in range(n)], lam)


def random_tree_instance(rng: random.Random, n: int, lam: int) -> InfluenceNetwork:
    edges = random_tree_edges(rng, n)
    deg = degrees_of(n, edges)
    return tree_network([rng.randint(1, deg[v]) for v in range(n)], edges, lam)


def random_general_instance(rng: random.Random, n: int, lam: int) -> InfluenceNetwork:
    """Random attachment tree plus a few extra edges, thresholds in [1, deg]."""
    edges = set(random_tree_edges(rng, n))
    spare = [e for e in combinations(range(n), 2) if e not in edges]
    extra = rng.randint(0, min(len(spare), n // 2))
    edges.update(rng.sample(spare, extra))
    deg = degrees_of(n, edges)
    return general_network([rng.randint(1, deg[v]) for v in range(n)], edges, lam)


def random_instance(rng: random.Random, n: int, lam: int) -> InfluenceNetwork:
    maker = rng.choice(
        [random_path_instance, random_clique_instance, random_tree_instance, random_general_instance]
    )
    if n < 3:
        maker = rng.choice([random_clique_instance, random_tree_instance])
    return maker(rng, n, lam)


def bounded_vectors_of_cost(bounds: tuple[int, ...], cost: int):
    """All p with sum(p) = cost and 0 <= p[i] <= bounds[i], lexicographic."""

    def rec(i: int, remaining: int, prefix: list[int]):
        if i == len(bounds):
            if remaining == 0:
                yield tuple(prefix)
            return
        if remaining > sum(bounds[i:]):
            return
        for q in range(0, min(bounds[i], remaining) + 1):
            prefix.append(q)
            yield from rec(i + 1, remaining - q, prefix)
            prefix.pop()

    yield from rec(0, cost, [])


def literal_deepening_optimum(net: InfluenceNetwork) -> tuple[int, tuple[int, ...]]:
    """The straight-from-the-definition reference: try cost 0, 1, 2, ...

    Exponential; keep n tiny.  Used to validate the production oracle.
    """
    for cost in range(sum(net.thresholds) + 1):
        for p in bounded_vectors_of_cost(net.thresholds, cost):
            if verify_solution(net, p):
                return cost, p
    raise AssertionError("p = t is always feasible, unreachable")
