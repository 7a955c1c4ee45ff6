"""Exact linear-time solver for path instances.

A path instance has threshold 1 at both ends and thresholds in {1, 2}
inside (the threshold cap is the degree).  The solver walks the path
left to right and splits it at every maximal interior run of
threshold-2 nodes.  Each such run, together with its two flanking
threshold-1 nodes j and k, is handled by a closed-form incentive
pattern over the middle; the all-ones stretches in between are covered
by the spacing rule for threshold-1 paths, with virtual helper nodes
glued on so that the flanking nodes are influenced early enough to feed
the patterns.  Requires a round budget of at least 2; smaller budgets
route to the tree solver, which handles them exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    InfluenceNetwork,
    InvalidInstanceError,
    SolveResult,
    make_result,
    path_network,
)


@dataclass(frozen=True)
class TwoPathSegment:
    """A maximal interior threshold-2 run plus its threshold-1 endpoints.

    Nodes j and k have threshold 1; every node strictly between them has
    threshold 2.  ``middle`` is the number of threshold-2 nodes.
    """

    j: int
    k: int

    @property
    def middle(self) -> int:
        return self.k - self.j - 1


def find_leftmost_two_path(thresholds: Sequence[int], start: int) -> Optional[TwoPathSegment]:
    """First threshold-2 run with left endpoint >= start, scanning right.

    Runs touching the path ends are impossible on valid instances
    (endpoints have degree 1), so every run found is interior.
    """
    n = len(thresholds)
    q = start + 1
    while q < n - 1 and thresholds[q] != 2:
        q += 1
    if q >= n - 1:
        return None
    end = q
    while thresholds[end + 1] == 2:  # t(n-1) = 1 guards the walk
        end += 1
    return TwoPathSegment(q - 1, end + 1)


def two_path_middle_pattern(m: int) -> list[int]:
    """Incentives for the m threshold-2 nodes of a run, cost m - 1.

    Odd m alternates 0, 2, 0, 2, ..., 0.  Even m starts 0, 1 and then
    alternates 2, 0.  Every second node self-activates and the rest are
    squeezed from both sides; the flanking threshold-1 nodes must be
    influenced a round before the budget runs out.  m = 2 has no such
    pattern and is classified separately.
    """
    if m < 1 or m == 2:
        raise ValueError(f"no middle pattern for run length {m}")
    if m % 2:
        return [0] + [2, 0] * ((m - 1) // 2)
    return [0, 1] + [2, 0] * ((m - 2) // 2)


def classify_length2(j: int, segment_start: int, lam: int) -> tuple[int, tuple[int, int]]:
    """Decide the incentive pair for a length-2 run starting after node j.

    The left stretch, measured from the current segment start through
    the first run node, holds j - segment_start + 2 nodes.  When that is
    an exact multiple of 2*lam + 1, extending the stretch by one more
    node would cost an extra incentive, so the pair (0, 1) is used and
    the right side must reach back two rounds early (case 1).  Otherwise
    the pair (1, 0) lets the left side absorb both helper nodes for free
    (case 2).
    """
    if lam < 2:
        raise ValueError("length-2 classification assumes a round budget of at least 2")
    if (j - segment_start + 2) % (2 * lam + 1) == 0:
        return 1, (0, 1)
    return 2, (1, 0)


def ones_segment_assignment(n: int, lam: int) -> tuple[list[int], int]:
    """Optimal incentives for an all-ones path and their total cost.

    Each incented node reaches lam nodes on either side within the
    budget, so incentives sit 2*lam + 1 apart starting at offset lam; a
    leftover stretch gets one extra incentive at distance lam from the
    right end.  A short path takes a single incentive in the middle.
    The cost always comes out to ceil(n / (2*lam + 1)).
    """
    if n < 1 or lam < 1:
        raise ValueError("need n >= 1 and lam >= 1")
    p = [0] * n
    positions = _ones_positions(n, lam)
    for pos in positions:
        p[pos] = 1
    return p, len(positions)


def _ones_positions(n: int, lam: int) -> list[int]:
    span = 2 * lam + 1
    if n <= span:
        return [n // 2]
    positions = [lam + c * span for c in range(n // span)]
    if n % span:
        positions.append(n - 1 - lam)
    return positions


def augment_with_dummy_nodes(net: InfluenceNetwork, side: str, count: int) -> InfluenceNetwork:
    """Glue ``count`` threshold-1 nodes onto one end of a path instance.

    Solving the augmented path forces the original end node to be
    influenced ``count`` rounds early with no outside help, which is how
    boundary-conditioned path optima are obtained.
    """
    if net.kind != "path":
        raise ValueError("augmentation applies to path instances")
    if count < 0:
        raise ValueError("count must be >= 0")
    if side == "right":
        t = net.thresholds + (1,) * count
    elif side == "left":
        t = (1,) * count + net.thresholds
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return path_network(t, net.lam)


def _validate_path(net: InfluenceNetwork, t: np.ndarray) -> None:
    problems = []
    if net.kind != "path":
        problems.append(f"path solver got kind {net.kind!r}")
    n = len(t)
    if n < 2:
        problems.append(f"need at least 2 nodes, got {n}")
    if net.lam < 0:
        problems.append(f"lambda must be >= 0, got {net.lam}")
    if net.edges is not None:
        problems.append("path instances must not carry an explicit edge list")
    if n >= 2 and (t[0] != 1 or t[n - 1] != 1):
        problems.append("path endpoints must have threshold 1")
    if n >= 2 and (t.min() < 1 or t.max() > 2):
        problems.append("path thresholds must lie in {1, 2}")
    if problems:
        raise InvalidInstanceError(problems)


def solve_path(net: InfluenceNetwork) -> SolveResult:
    """Minimum-cost incentives on a path, one left-to-right pass."""
    n = net.n
    t = np.fromiter(net.thresholds, dtype=np.int64, count=n)
    _validate_path(net, t)
    lam = net.lam
    if lam <= 1:
        from .trees import solve_tree

        return solve_tree(net)

    p = [0] * n

    def cover_ones(a: int, b: int, left_dummies: int, right_dummies: int) -> None:
        # Nodes a..b are an all-ones stretch; the outermost left_dummies
        # and right_dummies positions belong to neighbouring run patterns
        # and only shape the spacing.  An incentive falling on one of
        # them slides inward to the nearest owned node (possible only in
        # the single-incentive case, which places at most one unit).
        size = b - a + 1
        positions = _ones_positions(size, lam)
        lo, hi = left_dummies, size - 1 - right_dummies
        for pos in positions:
            pos = min(max(pos, lo), hi)
            assert p[a + pos] == 0
            p[a + pos] = 1

    # maximal interior threshold-2 runs, found in one vectorized sweep
    inside = np.zeros(n + 1, dtype=np.int8)
    inside[:n] = t == 2
    steps = np.diff(inside)
    run_starts = (np.flatnonzero(steps == 1) + 1).tolist()
    run_ends = np.flatnonzero(steps == -1).tolist()

    i = 0  # left boundary of the unfinished stretch
    ld = 0  # how many nodes at i, i+1 are owned by the previous pattern
    for s, e in zip(run_starts, run_ends):
        j, k = s - 1, e + 1
        m = e - s + 1
        if m != 2:
            if m % 2 == 0:
                p[j + 2] = 1
                first_two = j + 3
            else:
                first_two = j + 2
            if first_two <= k - 2:
                count = (k - 2 - first_two) // 2 + 1
                p[first_two : k - 1 : 2] = [2] * count
            cover_ones(i, j + 1, ld, 1)
            i, ld = k - 1, 1
        else:
            case, (left_inc, right_inc) = classify_length2(j, i, lam)
            p[j + 1] = left_inc
            p[j + 2] = right_inc
            if case == 1:
                cover_ones(i, j + 1, ld, 1)
                i, ld = j + 1, 2
            else:
                cover_ones(i, j + 2, ld, 2)
                i, ld = j + 2, 1
    cover_ones(i, n - 1, ld, 0)
    return make_result(net, p, "path")
