"""Exact minimum-cost incentive targeting under a round budget.

Given a graph with node thresholds, find the cheapest incentive
assignment whose threshold diffusion influences every node within a
fixed number of rounds.  Exact polynomial solvers cover paths, cliques
and trees; an exhaustive oracle covers any small graph.
"""

from .core import (
    INFEASIBLE,
    DiffusionTrace,
    InfluenceNetwork,
    InvalidInstanceError,
    SolveResult,
    assignment_cost,
    clique_network,
    general_network,
    path_network,
    simulate,
    tree_network,
    validate_instance,
    verify_solution,
)
from .cliques import solve_clique
from .oracle import CostCapExceeded, OracleConfig, OracleLimitError, solve_oracle
from .paths import solve_path
from .trees import solve_tree

__all__ = [
    "INFEASIBLE",
    "DiffusionTrace",
    "InfluenceNetwork",
    "InvalidInstanceError",
    "SolveResult",
    "assignment_cost",
    "clique_network",
    "general_network",
    "path_network",
    "simulate",
    "tree_network",
    "validate_instance",
    "verify_solution",
    "CostCapExceeded",
    "OracleConfig",
    "OracleLimitError",
    "solve_oracle",
    "solve_path",
    "solve_clique",
    "solve_tree",
]
