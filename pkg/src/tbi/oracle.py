"""Exhaustive reference solver for small instances of any shape.

Deliberately independent of the structured solvers: it derives the
optimum straight from the round semantics by dynamic programming over
every monotone chain of influenced sets

    S_0 <= S_1 <= ... <= S_lam = V.

Seeding a node at round 0 costs its full threshold; a node entering at
round L >= 1 from predecessor set T costs max(0, t(v) - |N(v) & T|),
which is exactly the incentive it needs once its neighbours in T are
influenced.  Any feasible assignment dominates the chain of its own
activation rounds, and conversely every chain's induced assignment is
feasible, so the cheapest chain is the exact optimum.

State space is 2^n per round, work 3^n per round; usable up to 16 nodes,
defaults capped lower.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    InfluenceNetwork,
    SolveResult,
    make_result,
    require_valid,
)

HARD_NODE_CAP = 16


@dataclass(frozen=True)
class OracleConfig:
    node_limit: int = 12
    cost_cap: Optional[int] = None


class OracleLimitError(ValueError):
    """Instance has more nodes than the configured oracle limit."""


class CostCapExceeded(RuntimeError):
    """The optimum exists but lies above the configured cost cap."""


def _neighbour_masks(net: InfluenceNetwork) -> list[int]:
    masks = [0] * net.n
    for u, v in net.edge_list():
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _needed_tables(n: int, step_thresholds: Sequence[int], nbr_masks: Sequence[int]) -> list[list[int]]:
    """needed[v][T] = incentive v requires when entering after set T."""
    size = 1 << n
    tables: list[list[int]] = []
    for v in range(n):
        nm = nbr_masks[v]
        cnt = [0] * size
        for mask in range(1, size):
            low = mask & -mask
            cnt[mask] = cnt[mask ^ low] + (1 if nm & low else 0)
        tv = step_thresholds[v]
        tables.append([tv - c if c < tv else 0 for c in cnt])
    return tables


def _round_tables(
    n: int,
    thresholds: Sequence[int],
    needed: Sequence[Sequence[int]],
    lam_eff: int,
) -> list[list[int]]:
    size = 1 << n
    full = size - 1
    d0 = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        d0[mask] = d0[mask ^ low] + thresholds[low.bit_length() - 1]
    tables = [d0]
    prev = d0
    for ell in range(1, lam_eff + 1):
        cur = prev[:]  # T = S transition is free
        for base_set in range(size):
            base = prev[base_set]
            # expand all supersets of base_set, accumulating entry costs
            masks = [base_set]
            vals = [base]
            free = full & ~base_set
            while free:
                low = free & -free
                free ^= low
                w = needed[low.bit_length() - 1][base_set]
                masks += [m | low for m in masks]
                vals += [x + w for x in vals]
            for m, x in zip(masks, vals):
                if x < cur[m]:
                    cur[m] = x
        if cur == prev:
            tables.extend([cur] * (lam_eff - ell + 1))
            break
        tables.append(cur)
        prev = cur
    return tables


def _backtrack_chain(
    needed: Sequence[Sequence[int]],
    tables: Sequence[Sequence[int]],
    full: int,
    lam_eff: int,
) -> list[int]:
    """Recover one optimal chain; ties go to the smallest predecessor mask."""
    chain = [0] * (lam_eff + 1)
    chain[lam_eff] = full
    cur_set = full
    for ell in range(lam_eff, 0, -1):
        prev_tab = tables[ell - 1]
        best_val = None
        best_sub = None
        sub = cur_set
        while True:
            step = 0
            rem = cur_set & ~sub
            while rem:
                low = rem & -rem
                rem ^= low
                step += needed[low.bit_length() - 1][sub]
            val = prev_tab[sub] + step
            if best_val is None or val < best_val or (val == best_val and sub < best_sub):
                best_val = val
                best_sub = sub
            if sub == 0:
                break
            sub = (sub - 1) & cur_set
        assert best_val == tables[ell][cur_set]
        cur_set = best_sub
        chain[ell - 1] = cur_set
    return chain


def _prepare(net: InfluenceNetwork, config: OracleConfig) -> None:
    if config.node_limit > HARD_NODE_CAP:
        raise ValueError(f"node_limit {config.node_limit} exceeds hard cap {HARD_NODE_CAP}")
    require_valid(net)
    if net.n > config.node_limit:
        raise OracleLimitError(f"{net.n} nodes exceed oracle node_limit {config.node_limit}")


def solve_oracle(net: InfluenceNetwork, config: Optional[OracleConfig] = None) -> SolveResult:
    """Exact optimum by exhaustive chain search."""
    config = config or OracleConfig()
    _prepare(net, config)
    n = net.n
    t = list(net.thresholds)
    lam_eff = min(net.lam, n)
    needed = _needed_tables(n, t, _neighbour_masks(net))
    tables = _round_tables(n, t, needed, lam_eff)
    full = (1 << n) - 1
    best = tables[lam_eff][full]
    if config.cost_cap is not None and best > config.cost_cap:
        raise CostCapExceeded(f"optimum {best} above cost cap {config.cost_cap}")

    chain = _backtrack_chain(needed, tables, full, lam_eff)
    p = [0] * n
    seed = chain[0]
    for v in range(n):
        if seed >> v & 1:
            p[v] = t[v]
    for ell in range(1, lam_eff + 1):
        newly = chain[ell] & ~chain[ell - 1]
        prev_set = chain[ell - 1]
        for v in range(n):
            if newly >> v & 1:
                p[v] = needed[v][prev_set]
    assert sum(p) == best
    return make_result(net, p, "oracle")


def oracle_optimum(net: InfluenceNetwork, config: Optional[OracleConfig] = None) -> int:
    """Shorthand used all over the test-suite."""
    return solve_oracle(net, config).cost


def boosted_optimum(
    net: InfluenceNetwork,
    step_boost: Sequence[int],
    config: Optional[OracleConfig] = None,
) -> int:
    """Optimum cost when some nodes receive free external influence units.

    A boosted node behaves as if ``boost(v)`` neighbours outside the
    network were already influenced: usable from round 1 on, while
    round-0 seeding still costs the full threshold.  Returns only the
    cost because the induced assignment is not a solution of the plain
    network.  Exists for the boundary-condition property tests.
    """
    config = config or OracleConfig()
    _prepare(net, config)
    n = net.n
    t = list(net.thresholds)
    if len(step_boost) != n or any(b < 0 or b > t[v] for v, b in enumerate(step_boost)):
        raise ValueError("step_boost must satisfy 0 <= boost(v) <= t(v)")
    step_t = [t[v] - step_boost[v] for v in range(n)]
    lam_eff = min(net.lam, n)
    needed = _needed_tables(n, step_t, _neighbour_masks(net))
    tables = _round_tables(n, t, needed, lam_eff)
    return tables[lam_eff][(1 << n) - 1]
