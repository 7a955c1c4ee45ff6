"""Exact solver for tree instances by dynamic programming over subtrees.

The tree is rooted at node 0 and processed children before parents.
Each node keeps two cost rows indexed by its activation round: one
assuming the node must meet its full threshold from within its own
subtree ("full") and one assuming the parent edge will supply a unit
once the parent is active ("reduced").  A parent combines children by
folding a knapsack row over how many children are active early enough
to count toward its threshold; each remaining child either activates on
its own no later than the parent or waits and leans on the parent edge.
Runs in O(n * lam^2 * max_degree) time.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .core import (
    INFEASIBLE,
    InfluenceNetwork,
    SolveResult,
    make_result,
    require_valid,
)


@dataclass(frozen=True)
class RootedTree:
    """Tree rooted at node 0.

    ``order`` lists every node with children strictly before parents,
    so a single left-to-right sweep can fill in subtree tables.
    Children are kept in ascending node order for determinism.
    """

    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]


def root_and_order(net: InfluenceNetwork) -> RootedTree:
    n = net.n
    adj = net.adjacency
    parent = [-1] * n
    children: list[tuple[int, ...]] = [()] * n
    seen = [False] * n
    seen[0] = True
    bfs = [0]
    queue = deque([0])
    while queue:
        v = queue.popleft()
        kids = []
        for u in sorted(adj[v]):
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                kids.append(u)
                bfs.append(u)
                queue.append(u)
        children[v] = tuple(kids)
    return RootedTree(tuple(parent), tuple(children), tuple(reversed(bfs)))


@dataclass(frozen=True)
class NodeTable:
    """Per-node DP rows indexed by the node's activation round.

    full[L]: cheapest way to influence the whole subtree with this node
    active at round L, meeting its threshold from the subtree alone.
    reduced[L]: same but one threshold unit is supplied by the parent,
    which must already be active at some earlier round.  prefix_full
    and suffix_red are running minima so parents can read "by round L"
    and "no earlier than round L" in O(1); suffix_red has one extra
    trailing infinity so index lam+1 is always valid.
    """

    full: tuple[float, ...]
    reduced: tuple[float, ...]
    prefix_full: tuple[float, ...]
    suffix_red: tuple[float, ...]

    @classmethod
    def from_rows(cls, full: list[float], reduced: list[float]) -> "NodeTable":
        prefix = []
        best = INFEASIBLE
        for x in full:
            if x < best:
                best = x
            prefix.append(best)
        suffix = [INFEASIBLE] * (len(reduced) + 1)
        for ell in range(len(reduced) - 1, -1, -1):
            x = reduced[ell]
            suffix[ell] = x if x < suffix[ell + 1] else suffix[ell + 1]
        return cls(tuple(full), tuple(reduced), tuple(prefix), tuple(suffix))


@lru_cache(maxsize=None)
def leaf_table(lam_eff: int) -> NodeTable:
    """A leaf either buys its unit threshold up front or waits for the
    parent, in which case it activates one round later for free."""
    full = [1.0] + [INFEASIBLE] * lam_eff
    reduced = [INFEASIBLE] + [0.0] * lam_eff
    return NodeTable.from_rows(full, reduced)


def child_option_cost(table: NodeTable, ell: int, contributes: bool) -> float:
    """Cheapest subtree cost for a child of a node activating at round ell.

    A contributing child must be active by ell - 1 on its own.  A free
    child either finishes on its own by ell, or activates strictly
    later with the parent edge covering one threshold unit.
    """
    if contributes:
        return table.prefix_full[ell - 1] if ell > 0 else INFEASIBLE
    own = table.prefix_full[ell]
    late = table.suffix_red[ell + 1]
    return own if own <= late else late


def aggregate_children(child_tables: list[NodeTable], ell: int, cap: int) -> list[float]:
    """row[j] = cheapest total over the children with exactly j of them
    contributing to the parent's round-ell activation."""
    row = [0.0] + [INFEASIBLE] * cap
    for table in child_tables:
        free = child_option_cost(table, ell, False)
        contrib = child_option_cost(table, ell, True)
        new = [row[0] + free]
        for j in range(1, cap + 1):
            a = row[j] + free
            b = row[j - 1] + contrib
            new.append(a if a <= b else b)
        row = new
    return row


def node_table(threshold: int, child_tables: list[NodeTable], lam_eff: int) -> NodeTable:
    """DP rows for an internal node from its children's rows.

    Activating at round 0 means paying the full threshold; round L >= 1
    means paying threshold minus the number of contributing children.
    The contributor count row is shared by both variants since child
    options depend only on the round.
    """
    t = threshold
    base = sum(child_option_cost(c, 0, False) for c in child_tables)
    full = [t + base]
    reduced = [t - 1 + base]
    for ell in range(1, lam_eff + 1):
        row = aggregate_children(child_tables, ell, t)
        best_f = INFEASIBLE
        for j in range(t + 1):
            cand = t - j + row[j]
            if cand < best_f:
                best_f = cand
        best_r = INFEASIBLE
        for j in range(t):
            cand = t - 1 - j + row[j]
            if cand < best_r:
                best_r = cand
        assert best_r <= best_f
        full.append(best_f)
        reduced.append(best_r)
    return NodeTable.from_rows(full, reduced)


def _first_full(table: NodeTable, by: int) -> int:
    """Smallest round no later than ``by`` hitting the prefix minimum."""
    target = table.prefix_full[by]
    for ell in range(by + 1):
        if table.full[ell] == target:
            return ell
    raise AssertionError("prefix minimum not found")


def _first_reduced(table: NodeTable, after: int, lam_eff: int) -> int:
    target = table.suffix_red[after]
    for ell in range(after, lam_eff + 1):
        if table.reduced[ell] == target:
            return ell
    raise AssertionError("suffix minimum not found")


def solve_tree(net: InfluenceNetwork) -> SolveResult:
    """Minimum-cost incentives on a tree.

    Accepts kind "tree"; a path given with explicit edges also works
    since a path is a tree.  The incentive vector is recovered by
    re-running each visited node's child fold and walking it backwards,
    preferring contributing children and earlier rounds on ties.
    """
    require_valid(net)
    if net.kind not in ("tree", "path"):
        raise ValueError(f"tree solver got kind {net.kind!r}")
    n = net.n
    lam_eff = min(net.lam, n)
    rooted = root_and_order(net)
    thresholds = net.thresholds

    tables: list[NodeTable] = [None] * n  # type: ignore[list-item]
    leaf = leaf_table(lam_eff)
    for v in rooted.order:
        kids = rooted.children[v]
        if not kids:
            tables[v] = leaf
        else:
            tables[v] = node_table(thresholds[v], [tables[c] for c in kids], lam_eff)

    root = tables[0]
    best = min(root.full)
    assert best < INFEASIBLE
    best_ell = root.full.index(best)

    p = [0] * n
    # stack holds (node, activation round, parent-helped flag)
    stack: list[tuple[int, int, bool]] = [(0, best_ell, False)]
    while stack:
        v, ell, helped = stack.pop()
        t_eff = thresholds[v] - (1 if helped else 0)
        kids = rooted.children[v]
        if not kids:
            p[v] = 0 if helped else 1
            continue
        child_tables = [tables[c] for c in kids]
        if ell == 0:
            p[v] = thresholds[v]
            for c, table in zip(kids, child_tables):
                own = table.prefix_full[0]
                late = table.suffix_red[1]
                if own <= late:
                    stack.append((c, 0, False))
                else:
                    stack.append((c, _first_reduced(table, 1, lam_eff), True))
            continue
        rows = [[0.0] + [INFEASIBLE] * t_eff]
        for table in child_tables:
            free = child_option_cost(table, ell, False)
            contrib = child_option_cost(table, ell, True)
            prev = rows[-1]
            new = [prev[0] + free]
            for jj in range(1, t_eff + 1):
                a = prev[jj] + free
                b = prev[jj - 1] + contrib
                new.append(a if a <= b else b)
            rows.append(new)
        want = tables[v].reduced[ell] if helped else tables[v].full[ell]
        j = min(range(t_eff + 1), key=lambda jj: (t_eff - jj + rows[-1][jj], jj))
        assert t_eff - j + rows[-1][j] == want
        p[v] = t_eff - j
        for i in range(len(kids), 0, -1):
            c, table = kids[i - 1], child_tables[i - 1]
            contrib = child_option_cost(table, ell, True)
            if j >= 1 and rows[i][j] == rows[i - 1][j - 1] + contrib:
                stack.append((c, _first_full(table, ell - 1), False))
                j -= 1
            else:
                own = table.prefix_full[ell]
                late = table.suffix_red[ell + 1]
                if own <= late:
                    stack.append((c, _first_full(table, ell), False))
                else:
                    stack.append((c, _first_reduced(table, ell + 1, lam_eff), True))
        assert j == 0

    total = sum(p)
    assert total == best
    return make_result(net, p, "tree")
