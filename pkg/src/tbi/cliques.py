"""Exact solver for clique instances in O(lam * n log n) time.

In a clique every node sees the same active count, so some optimal
solution always activates prefixes of the nodes sorted by threshold.
Round costs follow a one-dimensional recurrence over prefix sizes: with
j nodes active a round earlier, finishing a prefix of size m costs the
sum of max(0, t_i - j) over ranks j+1..m, which prefix sums evaluate in
O(1).  The smallest optimal predecessor j is monotone in m, so each
round's whole argmin column is found by divide and conquer over m,
batched level by level into a few vectorized sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import InfluenceNetwork, InvalidInstanceError, SolveResult, make_result, require_valid


def sort_by_threshold(thresholds) -> tuple[np.ndarray, np.ndarray]:
    """Ascending threshold vector and the stable permuting indices.

    Ties keep their input order, so equal thresholds map to equal ranks
    deterministically.  Thresholds must fit a clique: between 1 and
    n - 1 inclusive.
    """
    t = np.asarray(thresholds, dtype=np.int64)
    n = len(t)
    if n and (t.min() < 1 or t.max() > n - 1):
        raise InvalidInstanceError([f"clique thresholds must lie in [1, {n - 1}]"])
    perm = np.argsort(t, kind="stable")
    return t[perm], perm


@dataclass(frozen=True, eq=False)
class CliqueTables:
    """Sorted view of a clique plus the prefix tables for O(1) costs.

    prefix[m] sums the m smallest thresholds (prefix[0] = 0).
    first_rank[j] is the smallest 1-based sorted rank whose threshold is
    at least j, with n + 1 standing in when no rank qualifies; the array
    is indexed up to j = n + 1 so lookups never bounds-check.
    """

    perm: np.ndarray
    sorted_t: np.ndarray
    prefix: np.ndarray
    first_rank: np.ndarray

    @property
    def n(self) -> int:
        return len(self.sorted_t)


def clique_tables(thresholds) -> CliqueTables:
    sorted_t, perm = sort_by_threshold(thresholds)
    n = len(sorted_t)
    prefix = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(sorted_t, out=prefix[1:])
    first_rank = np.searchsorted(sorted_t, np.arange(n + 2), side="left").astype(np.int64) + 1
    return CliqueTables(perm, sorted_t, prefix, first_rank)


def eval_A(tables: CliqueTables, j, m, prev_value: np.ndarray):
    """Total cost of finishing prefix m through predecessor prefix j.

    prev_value[j] pays for getting ranks 1..j active a round earlier;
    the new ranks j+1..m each lack max(0, t_i - j) units on top.  Only
    ranks from s = max(j + 1, first_rank[j + 1]) onward lack anything,
    so their sum telescopes to (prefix[m] - prefix[s-1]) - j*(m - s + 1)
    and the whole evaluation is O(1).  Accepts scalars or equal-shaped
    arrays for j and m.
    """
    j = np.asarray(j, dtype=np.int64)
    m = np.asarray(m, dtype=np.int64)
    s = np.maximum(j + 1, tables.first_rank[j + 1])
    tail = tables.prefix[m] - tables.prefix[np.minimum(s, m + 1) - 1] - j * (m - s + 1)
    return prev_value[j] + np.where(s <= m, tail, 0)


def compute_index_column(tables: CliqueTables, prev_value: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One round of the prefix recurrence: values and smallest argmins.

    prev_value[j] is the previous round's optimum for prefix size j
    (prev_value[0] unused).  Returns (value, index) with value[m] the
    new optimum and index[m] the smallest optimal predecessor, for all
    m at once.  Since index is non-decreasing in m, a divide and
    conquer over m only searches j between the argmins of the enclosing
    midpoints; all segments of one recursion level are evaluated in a
    single batch.  index[0] and index[n + 1] hold the sentinels 1 and n
    that seed the search bounds.
    """
    n = tables.n
    value = np.zeros(n + 1, dtype=np.int64)
    index = np.zeros(n + 2, dtype=np.int64)
    index[0] = 1
    index[n + 1] = n
    seg_x = np.array([1], dtype=np.int64)
    seg_y = np.array([n], dtype=np.int64)
    while seg_x.size:
        mids = (seg_x + seg_y + 1) // 2
        lo = index[seg_x - 1]
        hi = np.minimum(index[seg_y + 1], mids)
        counts = hi - lo + 1
        assert counts.min() >= 1
        starts = np.zeros(len(counts), dtype=np.int64)
        np.cumsum(counts[:-1], out=starts[1:])
        total = starts[-1] + counts[-1]
        # J enumerates lo[i]..hi[i] for every segment, back to back
        J = np.arange(total, dtype=np.int64) - np.repeat(starts - lo, counts)
        M = np.repeat(mids, counts)
        cand = eval_A(tables, J, M, prev_value)
        keys = cand * (n + 2) + J  # value first, then smallest j
        best = np.minimum.reduceat(keys, starts)
        index[mids] = best % (n + 2)
        value[mids] = best // (n + 2)
        left_keep = seg_x <= mids - 1
        right_keep = mids + 1 <= seg_y
        seg_x, seg_y = (
            np.concatenate([seg_x[left_keep], mids[right_keep] + 1]),
            np.concatenate([mids[left_keep] - 1, seg_y[right_keep]]),
        )
    return value, index


def solve_clique(net: InfluenceNetwork) -> SolveResult:
    """Minimum-cost incentives on a clique.

    Runs the recurrence for min(lam, n) rounds, stopping early once a
    value column repeats (later rounds cannot improve), then walks the
    stored argmin columns backwards: the ranks between consecutive
    predecessors form one activation cohort and pay their threshold
    shortfall.  Ties always take the smallest predecessor.
    """
    require_valid(net)
    if net.kind != "clique":
        raise ValueError(f"clique solver got kind {net.kind!r}")
    n = net.n
    lam_eff = min(net.lam, n)
    tables = clique_tables(net.thresholds)

    value = tables.prefix[: n + 1].copy()  # round 0: pay every threshold
    index_cols: list[np.ndarray] = []
    for _ in range(lam_eff):
        new_value, index = compute_index_column(tables, value)
        index_cols.append(index)
        stable = bool(np.array_equal(new_value, value))
        value = new_value
        if stable:
            while len(index_cols) < lam_eff:
                index_cols.append(index)
            break

    p_sorted = np.zeros(n, dtype=np.int64)
    m = n
    for index in reversed(index_cols):
        j = int(index[m])
        p_sorted[j:m] = np.maximum(tables.sorted_t[j:m] - j, 0)
        m = j
    p_sorted[:m] = tables.sorted_t[:m]

    p = np.zeros(n, dtype=np.int64)
    p[tables.perm] = p_sorted
    assert int(p.sum()) == int(value[n])
    return make_result(net, [int(x) for x in p], "clique")
