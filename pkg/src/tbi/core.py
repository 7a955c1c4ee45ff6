"""Network model, diffusion semantics and solution verification.

The model: an undirected graph where every node v carries an integer
threshold t(v) with 1 <= t(v) <= deg(v), a round budget lam >= 0, and an
incentive assignment p with 0 <= p(v) <= t(v).  Diffusion proceeds in
synchronous rounds:

  round 0:   v is influenced iff p(v) = t(v)
  round L:   v joins iff at least t(v) - p(v) of its neighbours were
             influenced by round L-1

Influence is monotone (nobody leaves).  An assignment solves an instance
iff every node is influenced by round lam.  Cost is sum(p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

# Saturating infeasibility sentinel used by every dynamic program in the
# package: min() and + behave correctly, and it never collides with a cost.
INFEASIBLE = math.inf

KINDS = ("path", "clique", "tree", "general")


@dataclass(frozen=True)
class InfluenceNetwork:
    """An instance: graph structure, thresholds and round budget.

    For ``path`` and ``clique`` kinds the edge set is implied by the kind
    (nodes i and i+1 adjacent, resp. all pairs adjacent) and ``edges`` is
    None; this keeps million-node paths cheap.  ``tree`` and ``general``
    carry an explicit edge list of (u, v) pairs with u < v.
    """

    kind: str
    thresholds: tuple[int, ...]
    lam: int
    edges: Optional[tuple[tuple[int, int], ...]] = None

    @property
    def n(self) -> int:
        return len(self.thresholds)

    @cached_property
    def adjacency(self) -> list[list[int]]:
        """Neighbour lists.  Materialized on demand; O(n^2) for cliques."""
        n = self.n
        if self.edges is not None:
            adj: list[list[int]] = [[] for _ in range(n)]
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            return adj
        if self.kind == "path":
            return [[w for w in (v - 1, v + 1) if 0 <= w < n] for v in range(n)]
        if self.kind == "clique":
            return [[w for w in range(n) if w != v] for v in range(n)]
        raise ValueError(f"kind {self.kind!r} needs an explicit edge list")

    def degree(self, v: int) -> int:
        if self.edges is not None:
            return self._degrees[v]
        if self.kind == "path":
            return 1 if (v == 0 or v == self.n - 1) and self.n > 1 else min(2, self.n - 1)
        if self.kind == "clique":
            return self.n - 1
        raise ValueError(f"kind {self.kind!r} needs an explicit edge list")

    @cached_property
    def _degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges or ():
            deg[u] += 1
            deg[v] += 1
        return deg

    def edge_list(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, including implied ones."""
        if self.edges is not None:
            return list(self.edges)
        if self.kind == "path":
            return [(v, v + 1) for v in range(self.n - 1)]
        if self.kind == "clique":
            return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)]
        raise ValueError(f"kind {self.kind!r} needs an explicit edge list")


def _canonical_edges(edges: Iterable[Sequence[int]]) -> tuple[tuple[int, int], ...]:
    out = sorted((min(u, v), max(u, v)) for u, v in edges)
    return tuple((int(u), int(v)) for u, v in out)


def path_network(thresholds: Sequence[int], lam: int) -> InfluenceNetwork:
    return InfluenceNetwork("path", tuple(int(t) for t in thresholds), int(lam))


def clique_network(thresholds: Sequence[int], lam: int) -> InfluenceNetwork:
    return InfluenceNetwork("clique", tuple(int(t) for t in thresholds), int(lam))


def tree_network(thresholds: Sequence[int], edges: Iterable[Sequence[int]], lam: int) -> InfluenceNetwork:
    return InfluenceNetwork("tree", tuple(int(t) for t in thresholds), int(lam), _canonical_edges(edges))


def general_network(thresholds: Sequence[int], edges: Iterable[Sequence[int]], lam: int) -> InfluenceNetwork:
    return InfluenceNetwork("general", tuple(int(t) for t in thresholds), int(lam), _canonical_edges(edges))


def _edges_are_path(net: InfluenceNetwork) -> bool:
    # Consecutive labelling required: exactly the edges (i, i+1).
    want = tuple((v, v + 1) for v in range(net.n - 1))
    return net.edges == want


def _edges_are_clique(net: InfluenceNetwork) -> bool:
    n = net.n
    if net.edges is None or len(net.edges) != n * (n - 1) // 2:
        return False
    return set(net.edges) == {(u, v) for u in range(n) for v in range(u + 1, n)}


def _edges_are_tree(net: InfluenceNetwork) -> bool:
    n = net.n
    if net.edges is None or len(net.edges) != n - 1:
        return False
    # connectivity check by union-find
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merged = 0
    for u, v in net.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
        merged += 1
    return merged == n - 1


class InvalidInstanceError(ValueError):
    """Raised by solvers when handed an instance that fails validation."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


def require_valid(net: InfluenceNetwork) -> None:
    problems = validate_instance(net)
    if problems:
        raise InvalidInstanceError(problems)


def validate_instance(net: InfluenceNetwork) -> list[str]:
    """Check every instance invariant; returns [] iff the instance is valid."""
    problems: list[str] = []
    n = net.n
    if net.kind not in KINDS:
        problems.append(f"unknown kind {net.kind!r}")
        return problems
    if n < 2:
        problems.append(f"need at least 2 nodes, got {n}")
    if net.lam < 0:
        problems.append(f"lambda must be >= 0, got {net.lam}")
    if net.kind in ("path", "clique"):
        if net.edges is not None:
            problems.append(f"kind {net.kind!r} must not carry an explicit edge list")
    else:
        if net.edges is None:
            problems.append(f"kind {net.kind!r} requires an explicit edge list")
        else:
            seen = set()
            for u, v in net.edges:
                if not (0 <= u < v < n):
                    problems.append(f"bad edge ({u}, {v}): need 0 <= u < v < n")
                elif (u, v) in seen:
                    problems.append(f"duplicate edge ({u}, {v})")
                seen.add((u, v))
            if net.kind == "tree" and not problems and not _edges_are_tree(net):
                problems.append("edge list is not a tree (must be connected, n-1 edges)")
    if n >= 2 and not problems:
        for v, t in enumerate(net.thresholds):
            d = net.degree(v)
            if not (1 <= t <= d):
                problems.append(f"threshold t({v})={t} outside [1, deg={d}]")
                if len(problems) > 20:  # an invalid bulk instance should not flood
                    problems.append("... further threshold problems suppressed")
                    break
    return problems


@dataclass(frozen=True)
class DiffusionTrace:
    """Outcome of a diffusion run.

    ``activation[v]`` is the round at which v became influenced, or None
    if it never did.  Cumulative round sets are derived on demand.
    """

    activation: tuple[Optional[int], ...]

    @property
    def n(self) -> int:
        return len(self.activation)

    @property
    def complete(self) -> bool:
        return all(a is not None for a in self.activation)

    @cached_property
    def fixpoint_round(self) -> int:
        finite = [a for a in self.activation if a is not None]
        return max(finite) if finite else 0

    def influenced_by(self, ell: int) -> set[int]:
        return {v for v, a in enumerate(self.activation) if a is not None and a <= ell}

    @cached_property
    def rounds(self) -> list[set[int]]:
        """rounds[L] = set of nodes influenced by round L, up to the fixpoint."""
        return [self.influenced_by(ell) for ell in range(self.fixpoint_round + 1)]


def _check_assignment(net: InfluenceNetwork, p: Sequence[int]) -> None:
    if len(p) != net.n:
        raise ValueError(f"assignment length {len(p)} != {net.n} nodes")
    for v, (q, t) in enumerate(zip(p, net.thresholds)):
        if not (0 <= q <= t):
            raise ValueError(f"incentive p({v})={q} outside [0, t({v})={t}]")


def _simulate_frontier(net: InfluenceNetwork, p: Sequence[int]) -> list[Optional[int]]:
    residual = [t - q for t, q in zip(net.thresholds, p)]
    activation: list[Optional[int]] = [None] * net.n
    frontier = [v for v, r in enumerate(residual) if r == 0]
    for v in frontier:
        activation[v] = 0
    adj = net.adjacency
    ell = 0
    while frontier:
        ell += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                residual[w] -= 1
                if residual[w] <= 0 and activation[w] is None:
                    activation[w] = ell
                    nxt.append(w)
        frontier = nxt
    return activation


def _simulate_path(net: InfluenceNetwork, p: Sequence[int]) -> list[Optional[int]]:
    n = net.n
    t = np.fromiter(net.thresholds, dtype=np.int64, count=n)
    q = np.fromiter(p, dtype=np.int64, count=n)
    residual = t - q
    active = residual == 0
    activation = np.where(active, 0, -1)
    ell = 0
    left = np.zeros(n, dtype=np.int8)
    right = np.zeros(n, dtype=np.int8)
    while True:
        ell += 1
        left[1:] = active[:-1]
        right[:-1] = active[1:]
        newly = ~active & (left + right >= residual)
        if not newly.any():
            break
        activation[newly] = ell
        active |= newly
    return [None if a < 0 else a for a in activation.tolist()]


def _simulate_clique(net: InfluenceNetwork, p: Sequence[int]) -> list[Optional[int]]:
    n = net.n
    residual = np.fromiter(net.thresholds, dtype=np.int64, count=n) - np.fromiter(p, dtype=np.int64, count=n)
    activation = np.full(n, -1, dtype=np.int64)
    order = np.argsort(residual, kind="stable")
    res_sorted = residual[order]
    # nodes with residual 0 are the round-0 set; the rest wake in sorted order
    ptr = int(np.searchsorted(res_sorted, 0, side="right"))
    activation[order[:ptr]] = 0
    count = ptr
    ell = 0
    while ptr < n:
        ell += 1
        start = ptr
        while ptr < n and res_sorted[ptr] <= count:
            ptr += 1
        if ptr == start:
            break
        activation[order[start:ptr]] = ell
        count = ptr
    return [None if a < 0 else a for a in activation.tolist()]


def simulate(net: InfluenceNetwork, p: Sequence[int]) -> DiffusionTrace:
    """Run the diffusion process to its fixpoint.

    Raises ValueError when p has the wrong length or violates
    0 <= p(v) <= t(v).  Dispatches to a structure-specialized runner for
    implied-edge kinds; all runners share the same round semantics.
    """
    _check_assignment(net, p)
    if net.kind == "path":
        activation = _simulate_path(net, p)
    elif net.kind == "clique":
        activation = _simulate_clique(net, p)
    else:
        activation = _simulate_frontier(net, p)
    return DiffusionTrace(tuple(activation))


def assignment_cost(p: Sequence[int]) -> int:
    return int(sum(p))


def verify_solution(net: InfluenceNetwork, p: Sequence[int]) -> bool:
    """True iff p influences every node within net.lam rounds."""
    trace = simulate(net, p)
    return all(a is not None and a <= net.lam for a in trace.activation)


@dataclass(frozen=True)
class SolveResult:
    """A verified optimal solution as produced by one of the solvers."""

    cost: int
    incentives: tuple[int, ...]
    activation_round: tuple[int, ...]
    solver: str

    @property
    def n(self) -> int:
        return len(self.incentives)


def make_result(net: InfluenceNetwork, p: Sequence[int], solver: str) -> SolveResult:
    """Simulate p on net and package it; rejects incomplete solutions."""
    trace = simulate(net, p)
    rounds = []
    for v, a in enumerate(trace.activation):
        if a is None or a > net.lam:
            raise AssertionError(
                f"solver {solver!r} produced a non-solution: node {v} "
                f"influenced at {a}, budget {net.lam}"
            )
        rounds.append(a)
    return SolveResult(assignment_cost(p), tuple(int(q) for q in p), tuple(rounds), solver)
