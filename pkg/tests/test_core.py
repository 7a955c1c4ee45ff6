"""Diffusion semantics, validation and the solution verifier."""

import random

import pytest

from tbi.core import (
    InfluenceNetwork,
    clique_network,
    general_network,
    path_network,
    simulate,
    tree_network,
    validate_instance,
    verify_solution,
)

from helpers import (
    random_clique_instance,
    random_instance,
    random_path_instance,
)


def test_round_zero_is_exactly_the_fully_incented_nodes():
    net = path_network([1, 2, 2, 1], 2)
    trace = simulate(net, [1, 0, 0, 1])
    assert trace.activation == (0, None, None, 0)
    assert not trace.complete
    assert trace.rounds == [{0, 3}]  # interior pair starves, fixpoint at round 0


def test_two_round_spread_on_short_path():
    net = path_network([1, 2, 2, 1], 2)
    trace = simulate(net, [1, 1, 0, 1])
    assert trace.activation == (0, 1, 2, 0)
    assert trace.rounds == [{0, 3}, {0, 1, 3}, {0, 1, 2, 3}]
    assert verify_solution(net, [1, 1, 0, 1])
    # same assignment, tighter budget: node 2 arrives one round too late
    assert not verify_solution(path_network([1, 2, 2, 1], 1), [1, 1, 0, 1])


def test_influence_is_monotone_over_rounds():
    rng = random.Random(7)
    for _ in range(50):
        net = random_instance(rng, rng.randint(2, 9), rng.randint(0, 3))
        p = [rng.randint(0, t) for t in net.thresholds]
        rounds = simulate(net, p).rounds
        for earlier, later in zip(rounds, rounds[1:]):
            assert earlier <= later


def test_raising_incentives_never_delays_anyone():
    rng = random.Random(11)
    for _ in range(60):
        net = random_instance(rng, rng.randint(2, 9), rng.randint(0, 3))
        p = [rng.randint(0, t) for t in net.thresholds]
        before = simulate(net, p).activation
        v = rng.randrange(net.n)
        if p[v] == net.thresholds[v]:
            continue
        bumped = list(p)
        bumped[v] += 1
        after = simulate(net, bumped).activation
        for a, b in zip(before, after):
            assert b is not None or a is None
            if a is not None and b is not None:
                assert b <= a


def test_full_incentive_vector_always_solves_at_lambda_zero():
    rng = random.Random(3)
    for _ in range(30):
        net = random_instance(rng, rng.randint(2, 8), 0)
        assert verify_solution(net, list(net.thresholds))
        trace = simulate(net, list(net.thresholds))
        assert set(trace.activation) == {0}
        # any node left one unit short can never enter at round 0
        short = list(net.thresholds)
        v = rng.randrange(net.n)
        short[v] -= 1
        if short[v] >= 0:
            assert not verify_solution(net, short)


def test_assignment_validation():
    net = path_network([1, 2, 2, 1], 2)
    with pytest.raises(ValueError):
        simulate(net, [1, 0, 0])  # wrong length
    with pytest.raises(ValueError):
        simulate(net, [1, 0, 0, -1])
    with pytest.raises(ValueError):
        simulate(net, [2, 0, 0, 1])  # p(0) > t(0)


def test_specialized_runners_agree_with_generic_walk():
    rng = random.Random(19)
    for _ in range(40):
        n = rng.randint(2, 10)
        lam = rng.randint(0, 3)
        for net in (random_path_instance(rng, n, lam), random_clique_instance(rng, n, lam)):
            twin = general_network(net.thresholds, net.edge_list(), lam)
            p = [rng.randint(0, t) for t in net.thresholds]
            assert simulate(net, p).activation == simulate(twin, p).activation


def test_validate_instance_reports_problems():
    assert validate_instance(path_network([1, 2, 1], 2)) == []
    assert validate_instance(tree_network([1, 1], [(0, 1)], 0)) == []

    assert any("2 nodes" in msg for msg in validate_instance(clique_network([1], 1)))
    assert any("lambda" in msg for msg in validate_instance(path_network([1, 1], -1)))
    # thresholds must stay within [1, degree]
    assert any("threshold" in msg for msg in validate_instance(path_network([1, 3, 1], 2)))
    assert any("threshold" in msg for msg in validate_instance(path_network([2, 1, 1], 2)))
    assert any("threshold" in msg for msg in validate_instance(clique_network([1, 0], 1)))
    # trees must actually be trees: cycle plus isolated node, duplicates
    assert any(
        "tree" in msg
        for msg in validate_instance(tree_network([1, 1, 1, 1], [(0, 1), (1, 2), (0, 2)], 1))
    )
    assert any(
        "duplicate" in msg
        for msg in validate_instance(InfluenceNetwork("tree", (1, 1, 1), 1, ((0, 1), (0, 1))))
    )
    # implied-edge kinds reject explicit edge lists
    assert any(
        "explicit" in msg
        for msg in validate_instance(InfluenceNetwork("path", (1, 1), 1, ((0, 1),)))
    )
    assert any(
        "edge" in msg for msg in validate_instance(InfluenceNetwork("general", (1, 1), 1, None))
    )
    assert any("bad edge" in msg for msg in validate_instance(general_network([1, 1], [(0, 0)], 1)))


def test_degrees_and_edge_lists():
    path = path_network([1, 2, 2, 1], 1)
    assert [path.degree(v) for v in range(4)] == [1, 2, 2, 1]
    assert path.edge_list() == [(0, 1), (1, 2), (2, 3)]

    clique = clique_network([1, 2, 2, 1], 1)
    assert [clique.degree(v) for v in range(4)] == [3, 3, 3, 3]
    assert len(clique.edge_list()) == 6

    star = tree_network([3, 1, 1, 1], [(0, 1), (0, 2), (0, 3)], 1)
    assert [star.degree(v) for v in range(4)] == [3, 1, 1, 1]
    assert star.adjacency[0] == [1, 2, 3]
