"""Command line front end: solve, verify, gen, bench.

Exit codes: 0 success, 1 malformed or invalid input, 2 solution failed
verification, 3 requested solver does not apply to the instance.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from typing import Optional

from .cliques import solve_clique
from .core import (
    InfluenceNetwork,
    InvalidInstanceError,
    SolveResult,
    assignment_cost,
    clique_network,
    path_network,
    require_valid,
    simulate,
    tree_network,
)
from .instances import (
    ParseError,
    detect_shape,
    generate_instance,
    parse_instance,
    parse_solution,
    write_instance,
    write_solution,
)
from .oracle import OracleConfig, solve_oracle
from .paths import solve_path
from .trees import solve_tree

SOLVERS = ("auto", "path", "clique", "tree", "oracle")


class DispatchError(RuntimeError):
    """The requested (or any) exact solver does not cover the instance."""


class UsageError(ValueError):
    """Malformed command line; reported like any other bad input."""


def _implied_line(net: InfluenceNetwork) -> list[tuple[int, int]]:
    return [(v, v + 1) for v in range(net.n - 1)]


def dispatch(net: InfluenceNetwork, solver: str = "auto") -> SolveResult:
    """Route a valid instance to an exact solver.

    Auto mode picks the strongest structural reading of the edge set:
    paths and cliques first, then trees, then the exponential reference
    solver for small general graphs.  Forcing a specific solver succeeds
    only when the instance really has that shape (a two-node instance is
    at once a path, a clique, and a tree); anything else raises
    DispatchError.
    """
    require_valid(net)
    shape = detect_shape(net)
    if solver == "auto":
        if shape == "path":
            solver = "path"
        elif shape == "clique":
            solver = "clique"
        elif shape == "tree":
            solver = "tree"
        else:
            limit = OracleConfig().node_limit
            if net.n > limit:
                raise DispatchError(
                    f"no exact solver for a general instance with {net.n} nodes "
                    f"(reference solver handles up to {limit})"
                )
            solver = "oracle"
    if solver == "path":
        if shape == "path" or (shape == "clique" and net.n == 2):
            target = net if net.kind == "path" else path_network(net.thresholds, net.lam)
            return solve_path(target)
    elif solver == "clique":
        if shape == "clique" or (shape == "path" and net.n == 2):
            target = net if net.kind == "clique" else clique_network(net.thresholds, net.lam)
            return solve_clique(target)
    elif solver == "tree":
        if shape in ("path", "tree") or (shape == "clique" and net.n == 2):
            if net.kind in ("path", "tree"):
                target = net
            else:
                edges = net.edges if net.edges is not None else _implied_line(net)
                target = tree_network(net.thresholds, edges, net.lam)
            return solve_tree(target)
    elif solver == "oracle":
        limit = OracleConfig().node_limit
        if net.n > limit:
            raise DispatchError(
                f"reference solver handles up to {limit} nodes, instance has {net.n}"
            )
        return solve_oracle(net)
    else:
        raise UsageError(f"unknown solver {solver!r}, expected one of {', '.join(SOLVERS)}")
    raise DispatchError(f"{solver} solver does not apply to a {shape}-shaped instance")


def _cmd_solve(args: argparse.Namespace) -> int:
    with open(args.infile, "r", encoding="utf-8") as f:
        net = parse_instance(f.read())
    result = dispatch(net, args.solver)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            write_solution(result, f)
    else:
        write_solution(result, sys.stdout)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    with open(args.infile, "r", encoding="utf-8") as f:
        net = parse_instance(f.read())
    require_valid(net)
    with open(args.solution, "r", encoding="utf-8") as f:
        cost, incentives, rounds = parse_solution(f.read())
    if len(incentives) != net.n:
        print(f"verify: expected {net.n} incentives, got {len(incentives)}", file=sys.stderr)
        return 2
    if cost != assignment_cost(incentives):
        print(f"verify: cost field {cost} != incentive total {assignment_cost(incentives)}", file=sys.stderr)
        return 2
    try:
        trace = simulate(net, incentives)
    except ValueError as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return 2
    for v, a in enumerate(trace.activation):
        if a is None or a > net.lam:
            where = "never" if a is None else f"at round {a}"
            print(f"verify: node {v} influenced {where}, budget {net.lam}", file=sys.stderr)
            return 2
    simulated = [trace.activation[v] for v in range(net.n)]
    if rounds != simulated:
        print("verify: rounds field does not match the simulated dynamics", file=sys.stderr)
        return 2
    print(f"ok cost {cost} rounds {max(simulated)}")
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    net = generate_instance(args.kind, args.n, args.lam, args.seed, args.tmax)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            write_instance(net, f)
    else:
        write_instance(net, sys.stdout)
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    print(f"{'kind':<8} {'nodes':>9} {'lambda':>6} {'median_s':>9} {'cost':>12}  solver")
    for n in args.sizes:
        net = generate_instance(args.kind, n, args.lam, args.seed)
        times = []
        result = None
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            result = dispatch(net)
            times.append(time.perf_counter() - t0)
        med = statistics.median(times)
        print(f"{args.kind:<8} {n:>9} {net.lam:>6} {med:>9.4f} {result.cost:>12}  {result.solver}")
    return 0


def _size_list(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be comma-separated integers, got {text!r}")
    if not sizes:
        raise argparse.ArgumentTypeError("need at least one size")
    return sizes


class _Parser(argparse.ArgumentParser):
    """Argument errors map to exit code 1 like other malformed input."""

    def error(self, message: str):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tbi",
        description="Exact minimum-cost incentive targeting under a round budget.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_solve = sub.add_parser("solve", help="solve an instance file exactly")
    p_solve.add_argument("--in", dest="infile", required=True, metavar="F", help="instance file")
    p_solve.add_argument("--out", metavar="F", help="write the solution here instead of stdout")
    p_solve.add_argument("--solver", choices=SOLVERS, default="auto",
                         help="force a solver instead of picking by shape")
    p_solve.set_defaults(func=_cmd_solve)

    p_verify = sub.add_parser("verify", help="check a solution file against an instance")
    p_verify.add_argument("--in", dest="infile", required=True, metavar="F", help="instance file")
    p_verify.add_argument("--solution", required=True, metavar="F", help="solution file")
    p_verify.set_defaults(func=_cmd_verify)

    p_gen = sub.add_parser("gen", help="write a reproducible random instance")
    p_gen.add_argument("--kind", choices=["path", "clique", "tree", "general"], required=True)
    p_gen.add_argument("--n", type=int, required=True, help="node count")
    p_gen.add_argument("--lambda", dest="lam", type=int, required=True, help="round budget")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--tmax", type=int, default=None, help="threshold cap")
    p_gen.add_argument("--out", metavar="F", help="write the instance here instead of stdout")
    p_gen.set_defaults(func=_cmd_gen)

    p_bench = sub.add_parser("bench", help="time the solvers on generated instances")
    p_bench.add_argument("--kind", choices=["path", "clique", "tree", "general"], required=True)
    p_bench.add_argument("--sizes", type=_size_list, required=True, help="comma-separated node counts")
    p_bench.add_argument("--lambda", dest="lam", type=int, required=True, help="round budget")
    p_bench.add_argument("--repeat", type=int, required=True, help="runs per size, median reported")
    p_bench.add_argument("--seed", type=int, required=True)
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, ParseError, InvalidInstanceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DispatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
