"""Plain-text instance and solution files, shape detection, generators.

Instance format, one header word per line, '#' starts a comment:

    tbi v1
    nodes 4
    lambda 2
    kind path
    thresholds 1 2 2 1

Tree and general instances additionally carry an edge section:

    edges 3
    0 1
    1 2
    1 3

with every edge written as "u v", 0 <= u < v < nodes.  Path and clique
instances imply their edges and must not list any.  Solutions are:

    tbi-solution v1
    cost 3
    incentives 1 1 0 1
    rounds 0 1 2 0

Token order is fixed but line breaks are free: any whitespace
separates tokens.
"""

from __future__ import annotations

import random
from typing import Iterable, Optional, TextIO

from .core import (
    InfluenceNetwork,
    InvalidInstanceError,
    SolveResult,
    clique_network,
    general_network,
    path_network,
    tree_network,
)

INSTANCE_MAGIC = ("tbi", "v1")
SOLUTION_MAGIC = ("tbi-solution", "v1")


class ParseError(ValueError):
    """Malformed instance or solution text; message names the line."""


class _Tokens:
    """Whitespace token stream that remembers line numbers and strips
    '#' comments, for error messages that point at the right line."""

    def __init__(self, text: str):
        self.items: list[tuple[str, int]] = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            body = line.split("#", 1)[0]
            for tok in body.split():
                self.items.append((tok, lineno))
        self.pos = 0

    def next(self, what: str) -> tuple[str, int]:
        if self.pos >= len(self.items):
            raise ParseError(f"unexpected end of file, expected {what}")
        tok = self.items[self.pos]
        self.pos += 1
        return tok

    def expect(self, literal: str) -> None:
        tok, lineno = self.next(repr(literal))
        if tok != literal:
            raise ParseError(f"line {lineno}: expected {literal!r}, got {tok!r}")

    def integer(self, what: str) -> int:
        tok, lineno = self.next(what)
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"line {lineno}: {what} must be an integer, got {tok!r}") from None

    def done(self) -> None:
        if self.pos < len(self.items):
            tok, lineno = self.items[self.pos]
            raise ParseError(f"line {lineno}: trailing input starting at {tok!r}")


def parse_instance(text: str) -> InfluenceNetwork:
    """Parse instance text; raises ParseError on malformed input.

    Only the syntax is checked here; semantic validation is the job of
    validate_instance and the solvers.
    """
    toks = _Tokens(text)
    for word in INSTANCE_MAGIC:
        toks.expect(word)
    toks.expect("nodes")
    n = toks.integer("node count")
    if n < 0:
        raise ParseError(f"node count must be >= 0, got {n}")
    toks.expect("lambda")
    lam = toks.integer("round budget")
    toks.expect("kind")
    kind, lineno = toks.next("kind")
    if kind not in ("path", "clique", "tree", "general"):
        raise ParseError(f"line {lineno}: unknown kind {kind!r}")
    toks.expect("thresholds")
    thresholds = [toks.integer("threshold") for _ in range(n)]
    edges: Optional[list[tuple[int, int]]] = None
    if toks.pos < len(toks.items) and toks.items[toks.pos][0] == "edges":
        toks.expect("edges")
        m = toks.integer("edge count")
        if m < 0:
            raise ParseError(f"edge count must be >= 0, got {m}")
        edges = []
        for _ in range(m):
            u = toks.integer("edge endpoint")
            v = toks.integer("edge endpoint")
            edges.append((u, v))
    toks.done()
    if kind in ("path", "clique"):
        if edges is not None:
            raise ParseError(f"kind {kind!r} implies its edges; no edge section allowed")
        net = InfluenceNetwork(kind, tuple(thresholds), lam)
    else:
        if edges is None:
            raise ParseError(f"kind {kind!r} requires an edge section")
        for u, v in edges:
            if not (0 <= u < v < n):
                raise ParseError(f"edge ({u}, {v}) must satisfy 0 <= u < v < nodes")
        maker = tree_network if kind == "tree" else general_network
        net = maker(thresholds, edges, lam)
    return net


def write_instance(net: InfluenceNetwork, out: TextIO) -> None:
    out.write(f"{INSTANCE_MAGIC[0]} {INSTANCE_MAGIC[1]}\n")
    out.write(f"nodes {net.n}\n")
    out.write(f"lambda {net.lam}\n")
    out.write(f"kind {net.kind}\n")
    out.write("thresholds " + " ".join(str(t) for t in net.thresholds) + "\n")
    if net.edges is not None:
        out.write(f"edges {len(net.edges)}\n")
        for u, v in net.edges:
            out.write(f"{u} {v}\n")


def parse_solution(text: str) -> tuple[int, list[int], list[int]]:
    """Parse solution text into (cost, incentives, rounds)."""
    toks = _Tokens(text)
    for word in SOLUTION_MAGIC:
        toks.expect(word)
    toks.expect("cost")
    cost = toks.integer("cost")
    toks.expect("incentives")
    incentives: list[int] = []
    while toks.pos < len(toks.items) and toks.items[toks.pos][0] != "rounds":
        incentives.append(toks.integer("incentive"))
    toks.expect("rounds")
    rounds = [toks.integer("round") for _ in range(len(incentives))]
    toks.done()
    return cost, incentives, rounds


def write_solution(result: SolveResult, out: TextIO) -> None:
    out.write(f"{SOLUTION_MAGIC[0]} {SOLUTION_MAGIC[1]}\n")
    out.write(f"cost {result.cost}\n")
    out.write("incentives " + " ".join(str(q) for q in result.incentives) + "\n")
    out.write("rounds " + " ".join(str(r) for r in result.activation_round) + "\n")


def detect_shape(net: InfluenceNetwork) -> str:
    """Structural shape of an explicit edge list, strongest shape first.

    Returns "path", "clique", "tree", or "general".  Path means the
    edges are exactly the consecutive pairs under the given labelling;
    relabellings that happen to form a line still count as trees.
    """
    if net.edges is None:
        return net.kind
    n = net.n
    edges = set(net.edges)
    if n >= 2 and len(edges) == n - 1 and all((v, v + 1) in edges for v in range(n - 1)):
        return "path"
    if len(edges) == n * (n - 1) // 2:
        return "clique"
    if len(net.edges) == n - 1 and _connected(n, net.edges):
        return "tree"
    return "general"


def _connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(n)}) == 1


def generate_instance(kind: str, n: int, lam: int, seed: int, tmax: Optional[int] = None) -> InfluenceNetwork:
    """Deterministic random instance; same arguments, same instance.

    Thresholds are uniform over the feasible range at every node,
    optionally capped by tmax.  Trees use uniform random attachment;
    general graphs add up to n // 2 extra edges on top of a tree.
    """
    rng = random.Random(seed)
    cap = tmax if tmax is not None else n
    if n < 2:
        raise InvalidInstanceError(["need at least 2 nodes"])
    if cap < 1:
        raise InvalidInstanceError([f"tmax must be >= 1, got {tmax}"])
    if kind == "path":
        t = [1] + [rng.randint(1, min(2, cap)) for _ in range(n - 2)] + [1]
        return path_network(t, lam)
    if kind == "clique":
        t = [rng.randint(1, min(n - 1, cap)) for _ in range(n)]
        return clique_network(t, lam)
    if kind in ("tree", "general"):
        edges = [(rng.randrange(v), v) for v in range(1, n)]
        if kind == "general":
            have = set(edges)
            for _ in range(n // 2):
                u = rng.randrange(n)
                v = rng.randrange(n)
                e = (min(u, v), max(u, v))
                if u != v and e not in have:
                    have.add(e)
                    edges.append(e)
        deg = [0] * n
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        t = [rng.randint(1, min(deg[v], cap)) for v in range(n)]
        maker = tree_network if kind == "tree" else general_network
        return maker(t, edges, lam)
    raise ValueError(f"unknown kind {kind!r}")
